#![no_main]

use libfuzzer_sys::fuzz_target;
use scnr_cli::args::{parse_pair, parse_range};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_pair(text);
        if let Ok(r) = parse_range(text) {
            assert!(r.start() <= r.end());
        }
    }
});
