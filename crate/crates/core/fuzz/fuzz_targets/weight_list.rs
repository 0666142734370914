#![no_main]

use cusptorsion::kostant::{boundary_profile, kostant_data_closed_form};
use cusptorsion::rational::parse_rational_list;
use cusptorsion::weights::{Flavor, HighestWeight, WeightContext};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(comps) = parse_rational_list(text) else {
        return;
    };
    if comps.len() < 2 || comps.len() > 6 {
        return;
    }
    let n = comps.len() - 1;
    for flavor in [Flavor::SO0, Flavor::Spin] {
        let Ok(w) = HighestWeight::new(comps.clone(), WeightContext::G, flavor) else {
            continue;
        };
        // Validation passed, so downstream calls may fail but must not panic.
        if let Ok(data) = kostant_data_closed_form(&w, n) {
            assert_eq!(data.len(), 2 * (n + 1));
        }
        let _ = boundary_profile(&w, n, 1);
    }
});
