#![no_main]

use betauto::parse::{parse_identity, parse_int_poly, parse_laurent};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_identity(text);
    if let Ok(l) = parse_laurent(text) {
        assert_eq!(parse_laurent(&l.render("x")).unwrap(), l);
    }
    if let Ok(p) = parse_int_poly(text) {
        assert_eq!(parse_int_poly(&p.render("x")).unwrap(), p);
    }
});
