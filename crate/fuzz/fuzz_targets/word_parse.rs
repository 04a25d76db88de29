#![no_main]

use betauto::parse::{parse_word, render_word};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let names: Vec<String> = match selector % 3 {
        0 => ["0", "1", "3"].iter().map(|s| s.to_string()).collect(),
        1 => ["0", "P", "Q"].iter().map(|s| s.to_string()).collect(),
        _ => ["zero", "d1", "d2", "β"].iter().map(|s| s.to_string()).collect(),
    };
    if let Ok(w) = parse_word(&names, text) {
        assert!(w.iter().all(|&c| c < names.len()));
        assert_eq!(parse_word(&names, &render_word(&names, &w)).unwrap(), w);
    }
});
