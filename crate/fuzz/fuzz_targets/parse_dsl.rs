#![no_main]

use libfuzzer_sys::fuzz_target;
use sag_core::{parse_quiver, to_dsl};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(bq) = parse_quiver(text) {
        // anything accepted must survive a round trip
        assert_eq!(parse_quiver(&to_dsl(&bq)).unwrap(), bq);
    }
});
