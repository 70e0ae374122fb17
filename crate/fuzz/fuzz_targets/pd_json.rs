#![no_main]

use krebes_core::branched::knot_determinant;
use krebes_core::diagram::LinkDiagram;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(d) = LinkDiagram::from_json(text) {
        if d.is_knot() && d.crossing_count() <= 12 {
            knot_determinant(&d).expect("knots have determinants");
        }
    }
});
