//! Brute-force cross-checks of the automata against exact arithmetic.
//!
//! Everything here enumerates words, so lengths must stay small.

use std::collections::HashMap;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::automata::Automaton;
use crate::numfield::{BetaContext, FieldElem};
use crate::parse::render_word;
use crate::reducer::ReducerTable;
use crate::relations::RelAutomaton;
use crate::structure::{count_elements_bruteforce, AutomaticStructure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub checks: Vec<OracleCheck>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, result: Result<String, String>) {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.checks.push(OracleCheck { name: name.to_string(), passed, detail });
    }
}

/// All words of length `n` over `k` letters, ordered by `ranks`.
pub fn words_in_order(k: usize, n: usize, ranks: &[usize]) -> Vec<Vec<usize>> {
    let mut by_rank = vec![0; k];
    for (letter, &r) in ranks.iter().enumerate() {
        by_rank[r] = letter;
    }
    let total = k.checked_pow(n as u32).expect("word count fits in usize");
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; n];
    for _ in 0..total {
        out.push(digits.iter().map(|&d| by_rank[d]).collect());
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < k {
                break;
            }
            *d = 0;
        }
    }
    out
}

/// Least word of each class among words of length `n`.
pub fn class_representatives(ctx: &BetaContext, n: usize, ranks: &[usize]) -> HashMap<FieldElem, Vec<usize>> {
    let mut reps = HashMap::new();
    for w in words_in_order(ctx.alphabet_size(), n, ranks) {
        reps.entry(ctx.word_key(&w)).or_insert(w);
    }
    reps
}

fn mismatch(ctx: &BetaContext, what: &str, u: &[usize], v: &[usize]) -> String {
    format!("{what}: {} / {}", render_word(ctx.names(), u), render_word(ctx.names(), v))
}

/// Compare the relation automaton with exact evaluation on every pair of
/// length at most `exhaustive`, then on `samples` random pairs with lengths in
/// `sample_lengths`. Half the random pairs are uniform; the other half are
/// random accepted paths, so that related pairs are actually exercised.
pub fn check_relations(
    ctx: &BetaContext,
    rel: &RelAutomaton,
    exhaustive: usize,
    samples: usize,
    sample_lengths: (usize, usize),
    seed: u64,
) -> Result<String, String> {
    let k = ctx.alphabet_size();
    let ranks: Vec<usize> = (0..k).collect();
    let mut checked = 0usize;
    let mut related = 0usize;
    for n in 0..=exhaustive {
        let words = words_in_order(k, n, &ranks);
        let keys: Vec<FieldElem> = words.iter().map(|w| ctx.word_key(w)).collect();
        for (u, ku) in words.iter().zip(&keys) {
            for (v, kv) in words.iter().zip(&keys) {
                let truth = ku == kv;
                if rel.accepts_pair(u, v) != truth {
                    return Err(mismatch(ctx, "relation disagrees", u, v));
                }
                checked += 1;
                related += truth as usize;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = (sample_lengths.0, sample_lengths.1.max(sample_lengths.0));
    let a = rel.automaton();
    // ends[r][s]: a final state is reachable from s in exactly r steps
    let mut ends = vec![(0..a.state_count()).map(|s| a.is_final(s)).collect::<Vec<bool>>()];
    for r in 1..=hi {
        let prev = &ends[r - 1];
        let next = (0..a.state_count()).map(|s| a.edges(s).iter().any(|&(_, t)| prev[t])).collect();
        ends.push(next);
    }
    for i in 0..samples {
        let n = rng.gen_range(lo..=hi);
        let (u, v) = if i % 2 == 0 {
            let u: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
            let v: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
            (u, v)
        } else {
            match random_accepted(a, &ends, n, &mut rng) {
                Some(w) => (w.iter().map(|l| l / k).collect(), w.iter().map(|l| l % k).collect()),
                None => continue,
            }
        };
        let truth = ctx.word_key(&u) == ctx.word_key(&v);
        if rel.accepts_pair(&u, &v) != truth {
            return Err(mismatch(ctx, "relation disagrees", &u, &v));
        }
        checked += 1;
        related += truth as usize;
    }
    Ok(format!("{checked} pairs, {related} related"))
}

fn random_accepted(a: &Automaton, ends: &[Vec<bool>], n: usize, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    let starts: Vec<usize> = a.initials().iter().copied().filter(|&s| ends[n][s]).collect();
    let mut s = *starts.get(rng.gen_range(0..starts.len().max(1)))?;
    let mut word = Vec::with_capacity(n);
    for r in (0..n).rev() {
        let options: Vec<(usize, usize)> = a.edges(s).iter().copied().filter(|&(_, t)| ends[r][t]).collect();
        let (l, t) = options[rng.gen_range(0..options.len())];
        word.push(l);
        s = t;
    }
    Some(word)
}

/// The reduced automaton accepts exactly the least word of each class, for
/// every length up to `n`.
pub fn check_reduced(ctx: &BetaContext, structure: &AutomaticStructure, n: usize) -> Result<String, String> {
    let k = ctx.alphabet_size();
    let ranks = structure.order.ranks(k);
    let mut total = 0usize;
    for len in 0..=n {
        let reps = class_representatives(ctx, len, &ranks);
        let mut accepted: HashMap<FieldElem, Vec<usize>> = HashMap::new();
        for w in words_in_order(k, len, &ranks) {
            if !structure.reduced.accepts(&w) {
                continue;
            }
            let key = ctx.word_key(&w);
            if let Some(prev) = accepted.get(&key) {
                return Err(mismatch(ctx, "two reduced words in one class", prev, &w));
            }
            if reps[&key] != w {
                return Err(mismatch(ctx, "reduced word is not the least", &w, &reps[&key]));
            }
            accepted.insert(key, w);
        }
        if accepted.len() != reps.len() {
            return Err(format!("length {len}: {} classes but {} reduced words", reps.len(), accepted.len()));
        }
        total += accepted.len();
    }
    Ok(format!("{total} classes up to length {n}"))
}

/// Growth counts of the reduced automaton match enumeration of distinct maps.
pub fn check_counts(ctx: &BetaContext, structure: &AutomaticStructure, n: usize) -> Result<String, String> {
    let series = structure.reduced.count_series(n);
    for (len, got) in series.iter().enumerate() {
        let want = count_elements_bruteforce(ctx, len, n).map_err(|e| e.to_string())?;
        if *got != want {
            return Err(format!("length {len}: automaton counts {got}, enumeration {want}"));
        }
    }
    let shown: Vec<String> = series.iter().map(BigUint::to_string).collect();
    Ok(shown.join(","))
}

/// The reducer returns the least equivalent word for every word up to `n`.
pub fn check_reducer(
    ctx: &BetaContext,
    table: &mut ReducerTable,
    order_ranks: &[usize],
    n: usize,
) -> Result<String, String> {
    let k = ctx.alphabet_size();
    let mut checked = 0usize;
    for len in 0..=n {
        let reps = class_representatives(ctx, len, order_ranks);
        for w in words_in_order(k, len, order_ranks) {
            let got = table.reduce(&w).map_err(|e| e.to_string())?;
            let want = &reps[&ctx.word_key(&w)];
            if &got != want {
                return Err(mismatch(ctx, "reducer output differs from least word", &got, want));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} words, {} subsets cached", table.cached_subsets()))
}

/// Each multiplier accepts exactly `{(u·g, v)}` with `u` reduced of length
/// `len - 1` and `v` the reduced form of `u·g`, for every length up to `n`.
pub fn check_multipliers(ctx: &BetaContext, structure: &AutomaticStructure, n: usize) -> Result<String, String> {
    let k = ctx.alphabet_size();
    let ranks = structure.order.ranks(k);
    for len in 1..=n {
        let reps = class_representatives(ctx, len, &ranks);
        let reduced: Vec<Vec<usize>> =
            words_in_order(k, len - 1, &ranks).into_iter().filter(|u| structure.reduced.accepts(u)).collect();
        for (g, mult) in structure.multipliers.iter().enumerate() {
            for u in &reduced {
                let mut w = u.clone();
                w.push(g);
                let v = &reps[&ctx.word_key(&w)];
                let pair: Vec<usize> = w.iter().zip(v).map(|(a, b)| a * k + b).collect();
                if !mult.accepts(&pair) {
                    return Err(mismatch(ctx, &format!("multiplier {g} rejects"), &w, v));
                }
            }
            let got = mult.count_words(len);
            if got != BigUint::from(reduced.len()) {
                return Err(format!("multiplier {g} accepts {got} pairs of length {len}, expected {}", reduced.len()));
            }
        }
    }
    Ok(format!("{} multipliers up to length {n}", structure.multipliers.len()))
}

/// Run every check at word length `n` (relations exhaustively up to `n`, plus
/// `samples` random pairs of length `n + 1 ..= n + 2`).
pub fn run_all(
    ctx: &BetaContext,
    rel: &RelAutomaton,
    structure: &AutomaticStructure,
    n: usize,
    samples: usize,
    seed: u64,
) -> OracleReport {
    let mut report = OracleReport::default();
    report.push("relations", check_relations(ctx, rel, n, samples, (n + 1, n + 2), seed));
    report.push("reduced", check_reduced(ctx, structure, n));
    report.push("counts", check_counts(ctx, structure, n));
    let mut table = ReducerTable::new(rel, structure);
    report.push("reducer", check_reducer(ctx, &mut table, &structure.order.ranks(ctx.alphabet_size()), n));
    report.push("multipliers", check_multipliers(ctx, structure, n));
    let minimal = [&structure.reduced]
        .into_iter()
        .chain(&structure.multipliers)
        .all(|a| a.minimize().state_count() == a.state_count());
    report.push(
        "minimal",
        if minimal {
            Ok("reduced and multipliers minimal".into())
        } else {
            Err("an automaton shrinks when minimized".into())
        },
    );
    report
}
