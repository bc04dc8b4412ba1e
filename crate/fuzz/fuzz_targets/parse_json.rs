#![no_main]

use libfuzzer_sys::fuzz_target;
use sag_core::{parse_document, parse_json, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_document(text);
    if let Ok(bq) = parse_json(text) {
        assert_eq!(parse_json(&to_json(&bq)).unwrap(), bq);
    }
});
