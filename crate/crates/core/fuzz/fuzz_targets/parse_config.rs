#![no_main]

use libfuzzer_sys::fuzz_target;
use qsd_core::harness::parse_config;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(overrides) = parse_config(text) {
        if let Ok(cfg) = overrides.resolve() {
            assert!(cfg.validate().is_ok());
            assert!(cfg.point_count() > 0);
        }
    }
});
