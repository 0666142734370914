#![no_main]

use cusptorsion::assembler::theorem_terms;
use cusptorsion::problem::ProblemSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(spec) = ProblemSpec::from_json(text) else {
        return;
    };
    let _ = ProblemSpec::from_json(&spec.to_json()).unwrap();
    let Ok(problem) = spec.validate() else {
        return;
    };
    if problem.group.n() <= 4 {
        let tol = problem.options.tolerance.unwrap_or(1e-9);
        let _ = theorem_terms(&problem.weight, &problem.group, &problem.geometry, tol);
    }
});
