//! Fuzz the JSON element parser: arbitrary bytes must never panic, and
//! any successfully parsed element must round-trip through the canonical
//! serializer and survive validation.

#![no_main]

use libfuzzer_sys::fuzz_target;
use posetmap::doc;

fuzz_target!(|data: &[u8]| {
    let text = match std::str::from_utf8(data) {
        Ok(t) => t,
        Err(_) => return,
    };
    if let Ok(map) = doc::parse_element(text) {
        // parsing enforces the representation invariants, so these must
        // not panic on any accepted input
        let report = map.validate();
        let _ = report.is_valid();
        let canonical = doc::serialize_element(&map);
        let back = doc::parse_element(&canonical).expect("canonical output reparses");
        assert_eq!(back, map, "canonical serialization is not a fixed point");
    }
});
