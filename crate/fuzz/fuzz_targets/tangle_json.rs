#![no_main]

use krebes_core::tangle::{close_tangle, load_tangle, ClosureSpec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = load_tangle(text) {
        let d = close_tangle(&t, &ClosureSpec::default()).expect("the plain closure always exists");
        assert!(d.is_knot());
    }
});
