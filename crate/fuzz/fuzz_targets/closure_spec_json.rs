#![no_main]

use krebes_core::tangle::{close_tangle, closure_linking, krebes_a, ClosureSpec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = ClosureSpec::from_json(text) else { return };
    if spec.passages.len() > 6 || spec.passages.iter().any(|p| p.path.len() > 6) {
        return;
    }
    let t = krebes_a();
    if let Ok(d) = close_tangle(&t, &spec) {
        assert!(d.is_knot());
        let lk = closure_linking(&t, &spec).unwrap();
        assert_eq!(closure_linking(&t, &spec.reversed()).unwrap(), -lk);
    }
});
