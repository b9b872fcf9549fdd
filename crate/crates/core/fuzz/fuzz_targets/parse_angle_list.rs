#![no_main]

use libfuzzer_sys::fuzz_target;
use qsd_core::harness::{parse_angle_list, parse_state_list};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(angles) = parse_angle_list(text) {
        assert!(angles.iter().all(|a| a.value().is_finite()));
    }
    let _ = parse_state_list(text);
});
