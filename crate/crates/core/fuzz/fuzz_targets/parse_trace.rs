#![no_main]

use libfuzzer_sys::fuzz_target;
use qsd_core::nmrsim::trace::{parse_trace, to_trace};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(events) = parse_trace(text) {
        // Serialized form must be a fixed point of parse then format.
        let once = to_trace(&events);
        let again = parse_trace(&once).expect("serialized trace parses");
        assert_eq!(to_trace(&again), once);
    }
});
