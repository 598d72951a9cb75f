#![no_main]

use libfuzzer_sys::fuzz_target;
use scnr_core::ReliabilityPolynomial;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(p) = ReliabilityPolynomial::from_json_str(text) {
            let back = ReliabilityPolynomial::from_json_str(&p.to_json()).expect("round trip");
            assert_eq!(p, back);
        }
    }
});
