//! Fuzz the point-list parser: arbitrary bytes must never panic, and
//! accepted lists must re-parse from their own rendering.

#![no_main]

use libfuzzer_sys::fuzz_target;
use posetmap::doc;

fuzz_target!(|data: &[u8]| {
    let text = match std::str::from_utf8(data) {
        Ok(t) => t,
        Err(_) => return,
    };
    if let Ok(points) = doc::parse_points(text) {
        assert!(!points.is_empty());
        let dim = points[0].dim();
        let rendered = points
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let back = doc::parse_points(&rendered).expect("rendered points reparse");
        assert_eq!(back, points);
        assert!(back.iter().all(|p| p.dim() == dim));
    }
});
