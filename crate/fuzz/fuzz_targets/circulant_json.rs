#![no_main]

use libfuzzer_sys::fuzz_target;
use scnr_core::CirculantSpec;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(spec) = CirculantSpec::from_json_str(text) {
            assert_eq!(CirculantSpec::from_json_str(&spec.to_json()).ok(), Some(spec));
        }
    }
});
