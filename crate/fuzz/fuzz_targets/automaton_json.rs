#![no_main]

use betauto::automata::Automaton;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(a) = Automaton::from_json(text) else { return };
    let b = Automaton::from_json(&a.to_json()).expect("serialized automaton parses");
    assert!(a.same_shape(&b));
    if a.state_count() <= 12 && a.alphabet().len() <= 8 {
        let m = a.minimize();
        assert!(m.minimize().same_shape(&m));
        let _ = a.to_dot();
    }
});
