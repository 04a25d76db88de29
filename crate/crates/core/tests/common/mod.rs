#![allow(dead_code)]

use std::path::PathBuf;

use betauto::automata::{Alphabet, Automaton};
use betauto::numfield::config::load_context;
use betauto::numfield::BetaContext;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture(name: &str) -> BetaContext {
    let path = fixture_dir().join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    load_context(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every fixture name, sorted.
pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_dir())
        .expect("fixtures directory")
        .filter_map(|e| {
            let p = e.ok()?.path();
            (p.extension()? == "json").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
}

pub fn random_automaton(rng: &mut ChaCha8Rng, k: usize) -> Automaton {
    let n = rng.gen_range(1..=5);
    let mut a = Automaton::new(Alphabet::symbols((0..k).map(|i| i.to_string())));
    for s in 0..n {
        a.add_state(s.to_string());
    }
    for s in 0..n {
        for l in 0..k {
            for t in 0..n {
                if rng.gen_bool(0.25) {
                    a.add_edge(s, l, t);
                }
            }
        }
        if rng.gen_bool(0.4) {
            a.set_final(s, true);
        }
    }
    a.set_initial(0);
    if n > 1 && rng.gen_bool(0.3) {
        a.set_initial(n - 1);
    }
    a
}

pub fn all_words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in 0..k {
                let mut v: Vec<usize> = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn same_language(name: &str, a: &Automaton, b: &Automaton, words: &[Vec<usize>]) -> Result<(), String> {
    match words.iter().find(|w| a.accepts(w) != b.accepts(w)) {
        Some(w) => Err(format!("{name} changes the language at {w:?}")),
        None => Ok(()),
    }
}

/// Language-preservation and counting invariants on `count` random automata,
/// checked against membership of every word up to length 6.
pub fn random_automaton_invariants(count: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = 2;
    let words = all_words(k, 6);
    for i in 0..count {
        let a = random_automaton(&mut rng, k);
        let b = random_automaton(&mut rng, k);
        let ctx = |e: String| format!("automaton {i}: {e}");
        same_language("determinize", &a, &a.determinize(), &words).map_err(ctx)?;
        same_language("trim", &a, &a.trim(), &words).map_err(ctx)?;
        let m = a.minimize();
        same_language("minimize", &a, &m, &words).map_err(ctx)?;
        if !m.minimize().same_shape(&m) {
            return Err(ctx("minimize is not idempotent".into()));
        }
        if m.state_count() > a.determinize().trim().state_count() {
            return Err(ctx("minimal automaton larger than trimmed subset automaton".into()));
        }
        if !a.equivalent(&m) || a.equivalent(&a.complement()) {
            return Err(ctx("equivalence test wrong".into()));
        }
        let back = Automaton::from_json(&a.to_json()).map_err(|e| ctx(e.to_string()))?;
        same_language("json round trip", &a, &back, &words).map_err(ctx)?;
        let c = a.complement();
        let inter = a.intersect(&b).map_err(|e| ctx(e.to_string()))?;
        let uni = a.union(&b).map_err(|e| ctx(e.to_string()))?;
        let t = a.transpose();
        let p = a.product(&b).project(1).map_err(|e| ctx(e.to_string()))?;
        let counts = a.count_series(6);
        let mut per_len = [0u32; 7];
        for w in &words {
            let (x, y) = (a.accepts(w), b.accepts(w));
            per_len[w.len()] += x as u32;
            if c.accepts(w) == x {
                return Err(ctx(format!("complement wrong at {w:?}")));
            }
            if inter.accepts(w) != (x && y) || uni.accepts(w) != (x || y) {
                return Err(ctx(format!("boolean operation wrong at {w:?}")));
            }
            let rev: Vec<usize> = w.iter().rev().copied().collect();
            if t.accepts(&rev) != x {
                return Err(ctx(format!("transpose wrong at {w:?}")));
            }
            let b_has_len = words.iter().any(|v| v.len() == w.len() && b.accepts(v));
            if p.accepts(w) != (x && b_has_len) {
                return Err(ctx(format!("product projection wrong at {w:?}")));
            }
        }
        for (n, c) in counts.iter().enumerate() {
            if *c != per_len[n].into() {
                return Err(ctx(format!("count at length {n} is {c}, enumeration gives {}", per_len[n])));
            }
        }
    }
    Ok(())
}
