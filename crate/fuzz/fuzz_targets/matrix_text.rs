#![no_main]

use krebes_core::{smith_normal_form, IntMatrix};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(m) = text.parse::<IntMatrix>() else { return };
    // Keep the reduction small enough to stay fast.
    if !m.is_empty() && m.rows() <= 6 && m.cols() <= 6 {
        let r = smith_normal_form(&m).expect("parsed matrices reduce");
        assert_eq!(r.u.mul(&m).unwrap().mul(&r.v).unwrap().rows(), m.rows());
    }
    assert_eq!(m.to_string().parse::<IntMatrix>().unwrap(), m);
});
