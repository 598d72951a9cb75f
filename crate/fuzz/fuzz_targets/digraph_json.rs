#![no_main]

use libfuzzer_sys::fuzz_target;
use scnr_core::Digraph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = Digraph::from_json_str(text) {
        let back = Digraph::from_json_str(&g.to_json()).expect("round trip");
        assert_eq!(g, back);
        let _ = g.is_strongly_connected();
    }
});
