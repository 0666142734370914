#![no_main]

use cusptorsion::torsion::{reidemeister_torsion, BasedCochainComplex};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(c) = BasedCochainComplex::from_json(text) else {
        return;
    };
    assert_eq!(BasedCochainComplex::from_json(&c.to_json()).unwrap(), c);
    // Keep elimination cheap; the parser already caps total entries.
    if c.dims().iter().all(|&n| n <= 12) {
        let _ = reidemeister_torsion(&c);
    }
});
