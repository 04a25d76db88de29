mod common;

use betauto::automata::{Alphabet, Automaton};
use betauto::parse::{parse_int_poly, parse_word, render_word};
use betauto::poly::IntPoly;
use proptest::prelude::*;

#[test]
fn random_automata_invariants() {
    common::random_automaton_invariants(200, 99).unwrap();
}

fn automaton_strategy() -> impl Strategy<Value = Automaton> {
    (1usize..5)
        .prop_flat_map(|n| {
            (Just(n), prop::collection::vec((0..n, 0usize..2, 0..n), 0..12), prop::collection::vec(any::<bool>(), n))
        })
        .prop_map(|(_, edges, finals)| {
            let mut a = Automaton::new(Alphabet::symbols(["a", "b"]));
            for (s, &f) in finals.iter().enumerate() {
                a.add_state(s.to_string());
                a.set_final(s, f);
            }
            for (s, l, t) in edges {
                a.add_edge(s, l, t);
            }
            a.set_initial(0);
            a
        })
}

proptest! {
    #[test]
    fn minimize_is_canonical(a in automaton_strategy()) {
        let m = a.minimize();
        prop_assert!(m.same_shape(&a.determinize().minimize()));
        prop_assert!(m.same_shape(&a.transpose().transpose().minimize()));
        prop_assert!(a.complement().complement().equivalent(&a));
    }

    #[test]
    fn json_round_trip(a in automaton_strategy()) {
        let b = Automaton::from_json(&a.to_json()).unwrap();
        prop_assert!(a.same_shape(&b));
    }

    #[test]
    fn polynomial_render_round_trip(coeffs in prop::collection::vec(-50i64..50, 1..8)) {
        let p = IntPoly::from_i64(&coeffs);
        let back = parse_int_poly(&p.render("x")).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn word_render_round_trip(w in prop::collection::vec(0usize..3, 0..10)) {
        let names: Vec<String> = ["0", "1", "3"].iter().map(|s| s.to_string()).collect();
        prop_assert_eq!(parse_word(&names, &render_word(&names, &w)).unwrap(), w.clone());
        let long: Vec<String> = ["zero", "P", "Q"].iter().map(|s| s.to_string()).collect();
        prop_assert_eq!(parse_word(&long, &render_word(&long, &w)).unwrap(), w);
    }

    #[test]
    fn parsers_do_not_panic(text in "[-+*^(){}=xXbβ0-9 \\\\a-z,\\[\\]\":]{0,40}") {
        let _ = betauto::parse::parse_identity(&text);
        let _ = parse_int_poly(&text);
        let _ = Automaton::from_json(&text);
        let _ = betauto::numfield::config::ContextConfig::parse(&text);
    }
}
