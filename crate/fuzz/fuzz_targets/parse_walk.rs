#![no_main]

use libfuzzer_sys::fuzz_target;
use sag_core::walk::{parse_cyclic_walk, parse_walk};
use sag_core::parse_quiver;

const QUIVER: &str = include_str!("../../fixtures/fig5.quiver");

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let bq = parse_quiver(QUIVER).unwrap();
    if let Ok(w) = parse_walk(&bq, text) {
        assert_eq!(parse_walk(&bq, &w.format(&bq)).unwrap(), w);
    }
    let _ = parse_cyclic_walk(&bq, text);
});
