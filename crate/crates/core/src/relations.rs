//! The relation automaton: pairs of equal-length words that define the same
//! affine map.
//!
//! States are the field elements `x` reached from 0 by `x ↦ βx + (t_g - t_h)`
//! while reading the pair letter `(g, h)`. The word pair is a relation exactly
//! when the run returns to 0. Candidates are discarded when they can never
//! return: at an expanding conjugate γ every co-accessible state satisfies
//! `|σ(x)| < max_{A-A}|σ(a)| / (|γ| - 1)`, and in `Z[X]` the degree and the
//! coefficients are bounded by those of `A - A`.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::automata::{Alphabet, Automaton};
use crate::numfield::fixed::Fixed;
use crate::numfield::roots::CertifiedRoot;
use crate::numfield::{fe_sub, BetaContext, ContextError, EmbeddingClass, FieldElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_states: usize,
    pub max_depth: usize,
    /// Attempt the construction even when a conjugate lies on the unit circle.
    pub force: bool,
    /// Largest working precision used to settle a pruning comparison.
    pub max_refine_bits: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_states: 1_000_000, max_depth: 10_000, force: false, max_refine_bits: 4096 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildStats {
    /// States created by the forward search.
    pub explored: usize,
    /// Candidates rejected by a bound.
    pub pruned: usize,
    /// Largest breadth-first depth reached.
    pub depth: usize,
    /// Candidates kept because no precision settled their comparison.
    pub unresolved: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CapKind {
    States,
    Depth,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelationError {
    #[error("β has a conjugate on the unit circle; construction refused (use force to try under caps)")]
    Blocked,
    #[error("construction stopped at the {kind:?} cap after {} states, depth {}; inconclusive", stats.explored, stats.depth)]
    CapExceeded { kind: CapKind, stats: BuildStats },
    #[error("letter {0} is not in the alphabet")]
    LetterOutOfRange(usize),
    #[error("{0} and {1} are not coprime with 0 < p < q")]
    KenyonInput(i64, i64),
    #[error(transparent)]
    Context(#[from] ContextError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Freeness {
    Free,
    NonFree,
    Unknown,
}

/// Trimmed relation automaton over `Σ × Σ`, letter `(g, h)` at `g * |Σ| + h`.
#[derive(Clone, Debug)]
pub struct RelAutomaton {
    automaton: Automaton,
    values: Vec<FieldElem>,
    zero: usize,
    stats: BuildStats,
}

impl RelAutomaton {
    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    /// Field element of each state, in working coordinates.
    pub fn values(&self) -> &[FieldElem] {
        &self.values
    }

    pub fn zero_state(&self) -> usize {
        self.zero
    }

    pub fn stats(&self) -> BuildStats {
        self.stats
    }

    pub fn state_count(&self) -> usize {
        self.automaton.state_count()
    }

    pub fn alphabet_size(&self) -> usize {
        let pairs = self.automaton.alphabet().len();
        (pairs as f64).sqrt().round() as usize
    }

    /// Free exactly when no two distinct words are related, i.e. only the
    /// zero state survives trimming.
    pub fn is_free(&self) -> bool {
        self.automaton.state_count() == 1
    }

    /// Run `zip(u, v)`; words of different lengths are never related.
    pub fn accepts_pair(&self, u: &[usize], v: &[usize]) -> bool {
        if u.len() != v.len() {
            return false;
        }
        let k = self.alphabet_size();
        if u.iter().chain(v).any(|&c| c >= k) {
            return false;
        }
        let word: Vec<usize> = u.iter().zip(v).map(|(a, b)| a * k + b).collect();
        self.automaton.accepts(&word)
    }
}

fn digit_differences(ctx: &BetaContext) -> Vec<FieldElem> {
    let k = ctx.alphabet_size();
    let mut diffs = Vec::new();
    for g in 0..k {
        for h in 0..k {
            if g != h {
                diffs.push(fe_sub(&ctx.digits()[g], &ctx.digits()[h]).expect("same ring"));
            }
        }
    }
    diffs
}

fn polynomial_bounds(diffs: &[FieldElem]) -> (usize, Vec<BigInt>) {
    let degree_bound = diffs.iter().filter_map(|d| d.degree()).max().map_or(0, |d| d + 1);
    let maxima: Vec<BigInt> =
        (0..degree_bound).map(|j| diffs.iter().map(|d| d.coeff(j).abs()).max().unwrap_or_default()).collect();
    let coeff_bounds = (0..degree_bound).map(|i| maxima[i..].iter().sum()).collect();
    (degree_bound, coeff_bounds)
}

/// Bounds on co-accessible states in `Z[X]`: degree below the first value,
/// and `|coef_i|` at most the `i`-th entry of the second.
pub fn transcendental_bounds(ctx: &BetaContext) -> (usize, Vec<BigInt>) {
    polynomial_bounds(&digit_differences(ctx))
}

struct Pruner<'a> {
    ctx: &'a BetaContext,
    diffs: Vec<FieldElem>,
    refined: HashMap<u32, Vec<(CertifiedRoot, Fixed)>>,
    max_bits: u32,
    // transcendental bounds
    degree_bound: usize,
    coeff_bounds: Vec<BigInt>,
}

enum Verdict {
    Keep,
    Prune,
    Unresolved,
}

impl<'a> Pruner<'a> {
    fn new(ctx: &'a BetaContext, max_bits: u32) -> Self {
        let diffs = digit_differences(ctx);
        let (degree_bound, coeff_bounds) = polynomial_bounds(&diffs);
        Pruner { ctx, diffs, refined: HashMap::new(), max_bits, degree_bound, coeff_bounds }
    }

    fn verdict(&mut self, x: &FieldElem) -> Verdict {
        if !self.ctx.is_algebraic() {
            return self.transcendental(x);
        }
        let mut unresolved = false;
        for b in self.ctx.prune_bounds() {
            let v = self.ctx.eval_at(x, b.embedding).abs();
            if v.lo >= b.bound.hi {
                return Verdict::Prune;
            }
            if v.hi < b.bound.lo {
                continue;
            }
            match self.refine(x, b.embedding) {
                Verdict::Prune => return Verdict::Prune,
                Verdict::Unresolved => unresolved = true,
                Verdict::Keep => {}
            }
        }
        if unresolved {
            Verdict::Unresolved
        } else {
            Verdict::Keep
        }
    }

    fn refine(&mut self, x: &FieldElem, embedding: usize) -> Verdict {
        let mut bits = 128;
        while bits <= self.max_bits {
            if !self.ensure_bounds(bits) {
                break;
            }
            let (root, bound) = &self.refined[&bits][embedding];
            let v = self.ctx.abs_at_root(x, root);
            if v.lo_scaled() >= bound.hi_scaled() {
                return Verdict::Prune;
            }
            if v.hi_scaled() < bound.lo_scaled() {
                return Verdict::Keep;
            }
            bits *= 2;
        }
        Verdict::Unresolved
    }

    fn ensure_bounds(&mut self, bits: u32) -> bool {
        if !self.refined.contains_key(&bits) {
            let Ok(roots) = self.ctx.refined_roots(bits) else {
                return false;
            };
            let table = roots
                .into_iter()
                .enumerate()
                .map(|(i, root)| {
                    let b = root.bits();
                    let bound = if self.ctx.embeddings()[i].class == EmbeddingClass::Expanding {
                        let mut lo = BigInt::zero();
                        let mut hi = BigInt::zero();
                        for d in &self.diffs {
                            let m = self.ctx.abs_at_root(d, &root);
                            lo = lo.max(m.lo_scaled().clone());
                            hi = hi.max(m.hi_scaled().clone());
                        }
                        let num = Fixed::from_scaled(lo, hi, b);
                        let den = root.modulus().sub(&Fixed::from_int(&BigInt::one(), b));
                        if den.lo_scaled().is_positive() {
                            num.div(&den)
                        } else {
                            Fixed::from_scaled(BigInt::zero(), BigInt::one() << (2 * b), b)
                        }
                    } else {
                        Fixed::zero(b)
                    };
                    (root, bound)
                })
                .collect();
            self.refined.insert(bits, table);
        }
        true
    }

    fn transcendental(&self, x: &FieldElem) -> Verdict {
        if x.is_zero() {
            return Verdict::Keep;
        }
        if x.degree().is_some_and(|d| d >= self.degree_bound) {
            return Verdict::Prune;
        }
        for (c, bound) in x.coeffs().iter().zip(&self.coeff_bounds) {
            if &c.abs() > bound {
                return Verdict::Prune;
            }
        }
        Verdict::Keep
    }
}

/// Forward breadth-first search from 0 under the pruning bounds, then
/// restriction to states that can return to 0.
pub fn build_relation_automaton(ctx: &BetaContext, caps: &Caps) -> Result<RelAutomaton, RelationError> {
    if ctx.blocked() && !caps.force {
        return Err(RelationError::Blocked);
    }
    let k = ctx.alphabet_size();
    let mut pruner = Pruner::new(ctx, caps.max_refine_bits);
    let mut stats = BuildStats::default();
    let mut values = vec![ctx.zero()];
    let mut depth = vec![0usize];
    let mut index: HashMap<FieldElem, usize> = HashMap::new();
    index.insert(ctx.zero(), 0);
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        for g in 0..k {
            for h in 0..k {
                let next = ctx.step(&values[s], g, h);
                let t = match index.get(&next) {
                    Some(&t) => t,
                    None => {
                        match pruner.verdict(&next) {
                            Verdict::Prune => {
                                stats.pruned += 1;
                                continue;
                            }
                            Verdict::Unresolved => stats.unresolved += 1,
                            Verdict::Keep => {}
                        }
                        let d = depth[s] + 1;
                        if values.len() >= caps.max_states {
                            stats.explored = values.len();
                            return Err(RelationError::CapExceeded { kind: CapKind::States, stats });
                        }
                        if d > caps.max_depth {
                            stats.explored = values.len();
                            return Err(RelationError::CapExceeded { kind: CapKind::Depth, stats });
                        }
                        stats.depth = stats.depth.max(d);
                        let t = values.len();
                        values.push(next.clone());
                        depth.push(d);
                        index.insert(next, t);
                        queue.push_back(t);
                        t
                    }
                };
                edges.push((s, g * k + h, t));
            }
        }
    }
    stats.explored = values.len();

    let mut a = Automaton::new(Alphabet::full_pairs(ctx.names(), ctx.names()));
    for v in &values {
        a.add_state(ctx.render(v));
    }
    for (s, l, t) in edges {
        a.add_edge(s, l, t);
    }
    a.set_initial(0);
    a.set_final(0, true);
    let keep: Vec<bool> = a.accessible().iter().zip(a.coaccessible()).map(|(x, y)| *x && y).collect();
    let mut automaton = a.restrict(&keep);
    let values: Vec<FieldElem> = values.into_iter().zip(&keep).filter(|(_, k)| **k).map(|(v, _)| v).collect();
    if ctx.inverted() {
        automaton = automaton.transpose();
    }
    Ok(RelAutomaton { automaton, values, zero: 0, stats })
}

/// Sufficient test for freeness: some expanding conjugate separates every
/// nonzero digit difference from the largest possible tail.
pub fn quick_free_sufficient(ctx: &BetaContext) -> Freeness {
    if ctx.alphabet_size() <= 1 {
        return Freeness::Free;
    }
    if !ctx.is_algebraic() {
        return Freeness::Unknown;
    }
    for b in ctx.prune_bounds() {
        let smallest = ctx.digit_difference_moduli(b.embedding).iter().map(|m| m.lo).fold(f64::INFINITY, f64::min);
        if smallest > b.bound.hi {
            return Freeness::Free;
        }
    }
    Freeness::Unknown
}

/// Two digits and Mahler measure below 2 force a relation. Any two distinct
/// digits are affinely conjugate to `{0, 1}`, which leaves relations intact.
pub fn mahler_nonfree_check(ctx: &BetaContext) -> Freeness {
    if ctx.alphabet_size() != 2 {
        return Freeness::Unknown;
    }
    match ctx.mahler_measure() {
        Ok(m) if m.hi < 2.0 => Freeness::NonFree,
        _ => Freeness::Unknown,
    }
}

/// Digits `{0, p, q}` in base 3 give a free semigroup exactly when
/// `p + q ≡ 0 (mod 3)`.
pub fn kenyon_criterion(p: i64, q: i64) -> Result<Freeness, RelationError> {
    if p <= 0 || q <= p || p.gcd(&q) != 1 {
        return Err(RelationError::KenyonInput(p, q));
    }
    Ok(if (p + q) % 3 == 0 { Freeness::Free } else { Freeness::NonFree })
}

/// Exact check that two words define the same map.
pub fn verify_relation(ctx: &BetaContext, u: &[usize], v: &[usize]) -> Result<bool, RelationError> {
    if let Some(&c) = u.iter().chain(v).find(|&&c| c >= ctx.alphabet_size()) {
        return Err(RelationError::LetterOutOfRange(c));
    }
    if u.len() != v.len() {
        return Ok(false);
    }
    Ok(ctx.word_key(u) == ctx.word_key(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{make_context, BetaSpec, ContextOptions};
    use crate::poly::IntPoly;

    fn ctx(minpoly: &[i64], digits: &[i64]) -> BetaContext {
        let digits: Vec<IntPoly> = digits.iter().map(|&d| IntPoly::from_i64(&[d])).collect();
        make_context(&BetaSpec::MinPoly(IntPoly::from_i64(minpoly)), &digits, &ContextOptions::default()).unwrap()
    }

    #[test]
    fn intro_automaton() {
        let c = ctx(&[-3, 1], &[0, 1, 3]);
        let rel = build_relation_automaton(&c, &Caps::default()).unwrap();
        let mut labels: Vec<&str> = rel.automaton().labels().iter().map(String::as_str).collect();
        labels.sort();
        assert_eq!(labels, ["-1", "0", "1"]);
        assert!(!rel.is_free());
        assert!(!rel.accepts_pair(&[1, 1, 0], &[1, 2, 2]));
        assert!(rel.accepts_pair(&[1, 1, 0], &[0, 2, 2]));
        assert!(rel.accepts_pair(&[1, 0], &[0, 2]));
        assert!(rel.automaton().is_deterministic() && rel.automaton().is_codeterministic());
    }

    #[test]
    fn inverted_intro_reads_backwards() {
        let c = ctx(&[1, -3], &[0, 1, 3]);
        let rel = build_relation_automaton(&c, &Caps::default()).unwrap();
        assert_eq!(rel.state_count(), 3);
        // for β = 1/3 the relation 10 = 03 becomes 01 = 30
        assert!(rel.accepts_pair(&[0, 1], &[2, 0]));
        assert!(!rel.accepts_pair(&[1, 0], &[0, 2]));
    }

    #[test]
    fn free_kenyon_case() {
        let rel = build_relation_automaton(&ctx(&[-3, 1], &[0, 1, 5]), &Caps::default()).unwrap();
        assert!(rel.is_free());
        let single = build_relation_automaton(&ctx(&[-3, 1], &[0]), &Caps::default()).unwrap();
        assert!(single.is_free());
    }

    #[test]
    fn salem_refused_then_capped() {
        let c = ctx(&[1, -2, 1, -2, 1], &[0, 1]);
        assert_eq!(build_relation_automaton(&c, &Caps::default()).unwrap_err(), RelationError::Blocked);
        let caps = Caps { force: true, max_states: 2_000, ..Caps::default() };
        assert!(matches!(
            build_relation_automaton(&c, &caps),
            Err(RelationError::CapExceeded { kind: CapKind::States, .. })
        ));
    }

    #[test]
    fn freeness_tests() {
        assert_eq!(quick_free_sufficient(&ctx(&[-3, 1], &[0, 1])), Freeness::Free);
        assert_eq!(quick_free_sufficient(&ctx(&[-1, -1, 1], &[0, 1])), Freeness::Unknown);
        assert_eq!(mahler_nonfree_check(&ctx(&[-1, -1, 1], &[0, 1])), Freeness::NonFree);
        assert_eq!(mahler_nonfree_check(&ctx(&[-3, 1], &[0, 1])), Freeness::Unknown);
        assert_eq!(mahler_nonfree_check(&ctx(&[1, -2, 1, -2, 1], &[0, 1])), Freeness::NonFree);
        assert_eq!(quick_free_sufficient(&ctx(&[1, -3, -3, -3, 1], &[0, 1])), Freeness::Free);
    }

    #[test]
    fn kenyon_table() {
        assert_eq!(kenyon_criterion(1, 5).unwrap(), Freeness::Free);
        assert_eq!(kenyon_criterion(1, 3).unwrap(), Freeness::NonFree);
        assert_eq!(kenyon_criterion(2, 7).unwrap(), Freeness::Free);
        assert!(kenyon_criterion(2, 4).is_err());
    }

    #[test]
    fn relation_verification() {
        let c = ctx(&[-3, 1], &[0, 1, 3]);
        assert!(verify_relation(&c, &[1, 1, 0], &[0, 2, 2]).unwrap());
        assert!(verify_relation(&c, &[0], &[0]).unwrap());
        assert!(!verify_relation(&c, &[0], &[1]).unwrap());
        assert_eq!(verify_relation(&c, &[5], &[0]), Err(RelationError::LetterOutOfRange(5)));
    }
}
