#![no_main]

use cusptorsion::rational::{format_rational, format_rational_list, parse_rational, parse_rational_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = parse_rational(text) {
        // Printing is canonical, so it must parse back to the same value.
        assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }
    if let Ok(list) = parse_rational_list(text) {
        assert_eq!(parse_rational_list(&format_rational_list(&list)).unwrap(), list);
    }
});
