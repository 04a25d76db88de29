//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use betauto::automata::Automaton;
use betauto::numfield::BetaContext;
use betauto::oracle::{check_reduced, check_reducer, check_relations};
use betauto::parse::{parse_int_poly, parse_word, verify_identity};
use betauto::reducer::ReducerTable;
use betauto::relations::{
    build_relation_automaton, kenyon_criterion, mahler_nonfree_check, quick_free_sufficient, CapKind, Caps, Freeness,
    RelAutomaton, RelationError,
};
use betauto::structure::{build_reduced_automaton, build_structure, growth, GrowthReport, Order};
use num_bigint::BigUint;

use common::{fixture, fixture_names};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn build(ctx: &BetaContext) -> Result<RelAutomaton, String> {
    build_relation_automaton(ctx, &Caps::default()).map_err(|e| e.to_string())
}

fn mid(r: &GrowthReport) -> f64 {
    (r.lambda.lo + r.lambda.hi) / 2.0
}

fn contains_factor(w: &[usize], f: &[usize]) -> bool {
    w.windows(f.len()).any(|x| x == f)
}

fn criterion_1() -> Outcome {
    let ctx = fixture("intro");
    let rel = build(&ctx)?;
    ensure(!rel.is_free(), || "relation automaton is trivial".into())?;
    let names = ctx.names();
    let (u, v) = (parse_word(names, "110").unwrap(), parse_word(names, "033").unwrap());
    ensure(rel.accepts_pair(&u, &v), || "pair (1,0)(1,3)(0,3) rejected".into())?;
    let lex = build_reduced_automaton(&rel, Order::Lex);
    let report = growth(&lex, 6, Some(&parse_int_poly("x^2-3x+1").unwrap()));
    // f_{2n+2}: every other Fibonacci number, f_1 = f_2 = 1
    let mut fib = vec![BigUint::from(1u32), BigUint::from(1u32)];
    while fib.len() < 15 {
        let next = &fib[fib.len() - 1] + &fib[fib.len() - 2];
        fib.push(next);
    }
    let expected: Vec<BigUint> = (0..=6).map(|n| fib[2 * n + 1].clone()).collect();
    ensure(report.counts == expected, || format!("counts {:?}", report.counts))?;
    let golden_sq = (3.0 + 5f64.sqrt()) / 2.0;
    ensure(report.lambda.lo > golden_sq - 1e-6 && report.lambda.hi < golden_sq + 1e-6, || {
        format!("λ enclosure {:?}", report.lambda)
    })?;
    let revlex = build_reduced_automaton(&rel, Order::RevLex);
    let ten = parse_word(names, "10").unwrap();
    let zero_three = parse_word(names, "03").unwrap();
    for w in common::all_words(3, 7) {
        ensure(!(lex.accepts(&w) && contains_factor(&w, &ten)), || format!("lex accepts {w:?}"))?;
        ensure(!(revlex.accepts(&w) && contains_factor(&w, &zero_three)), || format!("revlex accepts {w:?}"))?;
    }
    Ok(format!("counts 1,3,8,21,55,144,377; λ ∈ [{:.9}, {:.9}]", report.lambda.lo, report.lambda.hi))
}

/// Printed growth table for digits {0, p, q} in base 3.
const KENYON_TABLE: &[(i64, i64, f64, &str)] = &[
    (1, 3, 2.6180, "x^2-3x+1"),
    (1, 4, 2.6180, "x^2-3x+1"),
    (2, 5, 2.8019, "x^3-4x^2+3x+1"),
    (1, 6, 2.7321, "x^2-2x-2"),
    (1, 7, 2.7383, "x^5-3x^4+x^2+3x-1"),
    (3, 7, 2.8794, "x^3-3x^2+1"),
    (3, 8, 2.8136, "x^3-2x^2-3x+2"),
    (1, 9, 2.6180, "x^2-3x+1"),
    (2, 9, 2.7233, "x^6-3x^5+x^3+3x^2-1"),
    (4, 9, 2.8794, "x^3-3x^2+1"),
    (1, 10, 2.6180, "x^2-3x+1"),
    (3, 10, 2.7699, "x^6-2x^5-4x^4+x^3+9x^2+6x+3"),
    (2, 11, 2.7421, "x^5-4x^4+3x^3+x^2+x-1"),
    (3, 11, 2.8073, "x^9-4x^8+x^7+7x^6-9x^3-x^2+3x-1"),
    (5, 11, 2.9242, "x^11-5x^10+6x^9-7x^8+32x^7-32x^6+15x^5-49x^4+20x^3-13x^2+3x-1"),
];

fn check_row(name: &str, rel: &RelAutomaton, lambda: f64, pi: &str) -> Result<(), String> {
    let pi = parse_int_poly(pi).map_err(|e| e.to_string())?;
    let red = build_reduced_automaton(rel, Order::Lex);
    let report = growth(&red, 0, Some(&pi));
    ensure((mid(&report) - lambda).abs() <= 1e-3, || format!("{name}: λ = {:.6}, table {lambda}", mid(&report)))?;
    let check = report.pi_check.unwrap();
    ensure(check.passed(), || format!("{name}: π check {check:?}, char poly {}", report.char_poly.render("x")))
}

fn criterion_2() -> Outcome {
    let mut pairs = 0;
    let mut free = 0;
    for q in 2..=11i64 {
        for p in 1..q {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let name = format!("kenyon_{p}_{q}");
            let rel = build(&fixture(&name))?;
            let expected = kenyon_criterion(p, q).map_err(|e| e.to_string())?;
            let got = if rel.is_free() { Freeness::Free } else { Freeness::NonFree };
            ensure(got == expected, || format!("{name}: automaton says {got:?}, criterion {expected:?}"))?;
            pairs += 1;
            free += rel.is_free() as usize;
            if let Some(&(_, _, lambda, pi)) = KENYON_TABLE.iter().find(|r| r.0 == p && r.1 == q) {
                check_row(&name, &rel, lambda, pi)?;
            }
        }
    }
    Ok(format!("{pairs} digit sets ({free} free), {} table rows", KENYON_TABLE.len()))
}

fn criterion_3() -> Outcome {
    let mut details = Vec::new();
    for (i, name) in ["pisot_2a", "pisot_3a", "pisot_3b", "pisot_4a", "pisot_4b"].iter().enumerate() {
        let ctx = fixture(name);
        let rel = build(&ctx)?;
        let measure = ctx.mahler_measure().map_err(|e| e.to_string())?;
        ensure(measure.hi < 2.0, || format!("{name}: Mahler measure {measure:?}"))?;
        ensure(mahler_nonfree_check(&ctx) == Freeness::NonFree, || format!("{name}: Mahler check not decisive"))?;
        ensure(!rel.is_free(), || format!("{name}: automaton is trivial"))?;
        let d = check_relations(&ctx, &rel, 4, 1000, (5, 6), 100 + i as u64).map_err(|e| format!("{name}: {e}"))?;
        details.push(format!("{name} {} states, {d}", rel.state_count()));
    }
    Ok(details.join("; "))
}

/// Printed growth table for digits {0, P, Q} over Z[X].
const TRANSCENDENTAL_TABLE: &[(&str, f64, &str)] = &[
    ("t_1_x", 2.6180, "x^2-3x+1"),
    ("t_1_x+1", 2.6180, "x^2-3x+1"),
    ("t_1_x2-x", 2.8794, "x^3-3x^2+1"),
    ("t_1_x2-x+1", 2.7971, "x^4-2x^3-2x^2-x+1"),
    ("t_1_x2", 2.6180, "x^2-3x+1"),
    ("t_1_x2+1", 2.6180, "x^2-3x+1"),
    ("t_1_x2+x", 2.8794, "x^3-3x^2+1"),
    ("t_1_x2+x+1", 2.7693, "x^3-3x^2+x-1"),
    ("t_x-1_x2", 2.7971, "x^4-2x^3-2x^2-x+1"),
    ("t_x-1_x2+x-1", 2.8794, "x^3-3x^2+1"),
    ("t_1_x3-x2-x", 2.9615, "x^4-3x^3+1"),
    ("t_1_x3-x2", 2.8584, "x^7-3x^6+3x^3+x^2-1"),
    ("t_1_x3-x2+1", 2.8396, "x^10-3x^9+3x^6+x^5+4x^4-3x^3-3x^2+1"),
    ("t_1_x3-x2+x", 2.8444, "x^13-3x^12-2x^11+7x^10-2x^9+7x^8-16x^6+6x^5-6x^3+8x^2+x-2"),
];

fn criterion_4() -> Outcome {
    for &(name, lambda, pi) in TRANSCENDENTAL_TABLE {
        let rel = build(&fixture(name))?;
        check_row(name, &rel, lambda, pi)?;
    }
    let t = build(&fixture("t_1_x"))?.automaton().minimize();
    let intro = build(&fixture("intro"))?.automaton().minimize();
    ensure(t.isomorphic(&intro), || "P=1, Q=X differs from the base-3 {0,1,3} automaton".into())?;
    // the transcendental semigroup surjects onto every specialisation
    let base = growth(&build_reduced_automaton(&build(&fixture("kenyon_3_7"))?, Order::Lex), 0, None);
    let generic = growth(&build_reduced_automaton(&build(&fixture("t_x_x2-x+1"))?, Order::Lex), 0, None);
    ensure(generic.lambda.hi >= base.lambda.lo, || format!("λ {:?} below base 3 {:?}", generic.lambda, base.lambda))?;
    Ok(format!(
        "{} rows; P=1,Q=X isomorphic to intro ({} states); λ(P=X,Q=X²-X+1) = {:.4} ≥ {:.4}",
        TRANSCENDENTAL_TABLE.len(),
        t.state_count(),
        mid(&generic),
        mid(&base)
    ))
}

const SALEM_IDENTITY: &str = "\\beta^{-2}+\\beta^{-3}+\\beta^{-5}+\\beta^{-6}-\\beta^{-7}+\\beta^{-8}+\\beta^{-12}+\\beta^{-13}+\\beta^{-14}+\\beta^{-15}-\\beta^{-16}-\\beta^{-17}-\\beta^{-18}+\\beta^{-19}+\\beta^{-20}-\\beta^{-21}+\\beta^{-23}+\\beta^{-25}+\\beta^{-26}+\\beta^{-27}-\\beta^{-28} = 2\\beta^3 - 5\\beta^2 + \\beta + 2";

fn criterion_5() -> Outcome {
    let ctx = fixture("salem");
    ensure(ctx.blocked(), || "no unit-circle conjugate detected".into())?;
    match build_relation_automaton(&ctx, &Caps::default()) {
        Err(RelationError::Blocked) => {}
        other => return Err(format!("expected a blocked verdict, got {:?}", other.map(|r| r.state_count()))),
    }
    let caps = Caps { max_states: 100_000, force: true, ..Caps::default() };
    let stats = match build_relation_automaton(&ctx, &caps) {
        Err(RelationError::CapExceeded { kind: CapKind::States, stats }) => stats,
        other => return Err(format!("expected the state cap, got {:?}", other.map(|r| r.state_count()))),
    };
    let printed = verify_identity(&ctx, SALEM_IDENTITY).map_err(|e| e.to_string())?;
    let (lhs, rhs) = SALEM_IDENTITY.split_once('=').unwrap();
    let flipped = verify_identity(&ctx, &format!("{lhs} = -({rhs})")).map_err(|e| e.to_string())?;
    let summary = format!(
        "blocked; forced run hit the state cap after {} states (inconclusive, non-existence not certified); \
         printed identity holds: {printed}; with the right side negated: {flipped}",
        stats.explored
    );
    if printed {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn criterion_6() -> Outcome {
    let ctx = fixture("salem_free");
    ensure(ctx.blocked(), || "expected a unit-circle conjugate".into())?;
    let verdict = quick_free_sufficient(&ctx);
    ensure(verdict == Freeness::Free, || format!("quick test says {verdict:?}"))?;
    Ok("quick test: Free (no automaton built)".into())
}

fn is_minimal_shape(a: &Automaton) -> bool {
    a.is_deterministic() && a.is_codeterministic() && a.minimize().state_count() == a.state_count()
}

fn criterion_7() -> Outcome {
    common::random_automaton_invariants(200, 2024)?;
    let mut built = 0;
    for name in fixture_names() {
        let ctx = fixture(&name);
        if ctx.blocked() {
            continue;
        }
        let rel = build(&ctx)?;
        ensure(is_minimal_shape(rel.automaton()), || format!("{name}: relation automaton not fixed by minimize"))?;
        for order in [Order::Lex, Order::RevLex] {
            let st = build_structure(&rel, order);
            check_reduced(&ctx, &st, 5).map_err(|e| format!("{name}: {e}"))?;
            let mut table = ReducerTable::new(&rel, &st);
            check_reducer(&ctx, &mut table, &order.ranks(ctx.alphabet_size()), 5)
                .map_err(|e| format!("{name}: {e}"))?;
            for w in common::all_words(ctx.alphabet_size(), 5) {
                let r = table.reduce(&w).map_err(|e| e.to_string())?;
                ensure(table.reduce(&r).map_err(|e| e.to_string())? == r, || format!("{name}: reduce not idempotent"))?;
                ensure(rel.accepts_pair(&w, &r), || format!("{name}: {w:?} not related to its reduction"))?;
            }
        }
        built += 1;
    }
    Ok(format!("200 random automata; {built} fixtures"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 intro example", criterion_1, Duration::from_secs(1)),
        ("2 base-3 {0,p,q} sweep", criterion_2, Duration::from_secs(30)),
        ("3 {0,1} Pisot oracle", criterion_3, Duration::from_secs(60)),
        ("4 transcendental table", criterion_4, Duration::from_secs(60)),
        ("5 Salem guard", criterion_5, Duration::from_secs(30)),
        ("6 quick freeness test", criterion_6, Duration::from_secs(30)),
        ("7 property suites", criterion_7, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(d) if took > limit => Err(format!("{d}; took {took:.2?}, limit {limit:?}")),
            o => o,
        };
        match outcome {
            Ok(d) => println!("PASS {name} ({took:.2?}): {d}"),
            Err(d) => {
                failed += 1;
                println!("FAIL {name} ({took:.2?}): {d}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 7 criteria failed");
        std::process::exit(1);
    }
    println!("all 7 criteria passed");
}
