#![no_main]

use krebes_core::diagram::LinkDiagram;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(d) = LinkDiagram::parse_pd(text) {
        let again = LinkDiagram::parse_pd(&d.to_pd_string()).expect("rendered PD reparses");
        assert_eq!(again, d);
    }
});
