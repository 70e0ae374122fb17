#![no_main]

use krebes_core::branched::{surgery_h1, SurgeryPresentation};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = SurgeryPresentation::from_json(text) {
        if p.generator_count() <= 8 {
            surgery_h1(&p).expect("valid presentations have homology");
        }
        assert_eq!(SurgeryPresentation::from_json(&p.to_json()).unwrap(), p);
    }
});
