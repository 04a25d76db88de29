mod common;

use betauto::oracle::{check_counts, check_multipliers, check_relations, run_all};
use betauto::relations::{build_relation_automaton, mahler_nonfree_check, quick_free_sufficient, Caps, Freeness};
use betauto::structure::{build_structure, Order};

use common::{fixture, fixture_names};

#[test]
fn relation_automata_match_exact_arithmetic() {
    for (i, name) in fixture_names().iter().enumerate() {
        let ctx = fixture(name);
        if ctx.blocked() {
            continue;
        }
        let rel = build_relation_automaton(&ctx, &Caps::default()).unwrap();
        let n = if ctx.alphabet_size() == 2 { 4 } else { 3 };
        check_relations(&ctx, &rel, n, 400, (5, 6), i as u64).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn counts_and_multipliers_match_enumeration() {
    for name in fixture_names() {
        let ctx = fixture(&name);
        if ctx.blocked() {
            continue;
        }
        let rel = build_relation_automaton(&ctx, &Caps::default()).unwrap();
        let st = build_structure(&rel, Order::Lex);
        check_counts(&ctx, &st, 6).unwrap_or_else(|e| panic!("{name}: {e}"));
        check_multipliers(&ctx, &st, 4).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn freeness_tests_agree_with_the_automaton() {
    for name in fixture_names() {
        let ctx = fixture(&name);
        let quick = quick_free_sufficient(&ctx);
        let mahler = mahler_nonfree_check(&ctx);
        assert!(!(quick == Freeness::Free && mahler == Freeness::NonFree), "{name}");
        if ctx.blocked() {
            continue;
        }
        let free = build_relation_automaton(&ctx, &Caps::default()).unwrap().is_free();
        if quick == Freeness::Free {
            assert!(free, "{name}: quick test says free");
        }
        if mahler == Freeness::NonFree {
            assert!(!free, "{name}: Mahler test says non-free");
        }
    }
}

#[test]
fn inverted_intro_mirrors_intro() {
    let ctx = fixture("intro_inverted");
    let rel = build_relation_automaton(&ctx, &Caps::default()).unwrap();
    let direct = build_relation_automaton(&fixture("intro"), &Caps::default()).unwrap();
    assert_eq!(rel.state_count(), direct.state_count());
    for order in [Order::Lex, Order::RevLex] {
        let report = run_all(&ctx, &rel, &build_structure(&rel, order), 4, 300, 11);
        assert!(report.passed(), "{report:?}");
    }
}
