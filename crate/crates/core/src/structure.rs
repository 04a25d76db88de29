//! Automatic structure derived from the relation automaton: reduced words,
//! multiplication automata and growth.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::automata::{char_poly, dominant_eigenvalue, lex_pair_automaton, Automaton, DEFAULT_EIGEN_TOL};
use crate::numfield::interval::Interval;
use crate::numfield::BetaContext;
use crate::poly::IntPoly;
use crate::relations::RelAutomaton;

pub const DEFAULT_GROWTH_TERMS: usize = 20;
pub const DEFAULT_BRUTEFORCE_CAP: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("brute-force enumeration limited to length {cap}, asked for {n}")]
    TooLong { n: usize, cap: usize },
}

/// Which equal-length representative counts as reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Order {
    /// Digit-list order.
    #[default]
    Lex,
    /// Reverse of the digit-list order.
    RevLex,
}

impl Order {
    /// `ranks[i]` is the position of letter `i`.
    pub fn ranks(self, k: usize) -> Vec<usize> {
        match self {
            Order::Lex => (0..k).collect(),
            Order::RevLex => (0..k).rev().collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AutomaticStructure {
    pub reduced: Automaton,
    pub multipliers: Vec<Automaton>,
    pub order: Order,
}

fn letter_names(rel: &RelAutomaton) -> Vec<String> {
    rel.automaton().alphabet().pairs().expect("relation automata use pair letters").left.clone()
}

/// Minimal DFA of the lexicographically least word in each class.
pub fn build_reduced_automaton(rel: &RelAutomaton, order: Order) -> Automaton {
    let names = letter_names(rel);
    let lex = lex_pair_automaton(&names, &order.ranks(names.len()));
    let smaller_exists = lex.intersect(rel.automaton()).expect("shared pair alphabet");
    let nonreduced = smaller_exists.project(2).expect("pair alphabet");
    nonreduced.complement().minimize()
}

/// Minimal DFA of `{(u·g, v) : u, v reduced, u·g = v}`.
pub fn build_multiplier(rel: &RelAutomaton, reduced: &Automaton, g: usize) -> Automaton {
    reduced.append_letter(g).product(reduced).intersect(rel.automaton()).expect("shared pair alphabet").minimize()
}

pub fn build_structure(rel: &RelAutomaton, order: Order) -> AutomaticStructure {
    let reduced = build_reduced_automaton(rel, order);
    let multipliers = (0..rel.alphabet_size()).map(|g| build_multiplier(rel, &reduced, g)).collect();
    AutomaticStructure { reduced, multipliers, order }
}

/// Verification of a candidate minimal polynomial for λ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiCheck {
    pub candidate: IntPoly,
    /// `|π|` at the midpoint of the λ enclosure.
    pub residual: f64,
    /// `max |π'| · width / 2`: the most `|π(mid)|` can be when π has a root
    /// inside the enclosure.
    pub residual_bound: f64,
    /// π changes sign across the enclosure (or vanishes at a point enclosure).
    pub root_certified: bool,
    pub divides_char_poly: bool,
}

impl PiCheck {
    pub fn passed(&self) -> bool {
        self.root_certified && self.residual <= self.residual_bound.max(f64::MIN_POSITIVE) && self.divides_char_poly
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub counts: Vec<BigUint>,
    pub char_poly: IntPoly,
    pub lambda: Interval,
    pub pi_check: Option<PiCheck>,
}

#[derive(Serialize, Deserialize)]
struct LambdaJson {
    lo: f64,
    hi: f64,
}

#[derive(Serialize, Deserialize)]
struct GrowthJson {
    counts: Vec<String>,
    char_poly: IntPoly,
    lambda: LambdaJson,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pi_check: Option<PiCheck>,
}

impl GrowthReport {
    pub fn to_json(&self) -> String {
        let doc = GrowthJson {
            counts: self.counts.iter().map(|c| c.to_string()).collect(),
            char_poly: self.char_poly.clone(),
            lambda: LambdaJson { lo: self.lambda.lo, hi: self.lambda.hi },
            pi_check: self.pi_check.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite enclosure")
}

/// Endpoint signs and the midpoint residual are computed exactly on the
/// dyadic endpoints, so rounding cannot mask or fake a root.
pub fn check_candidate(candidate: &IntPoly, lambda: &Interval, char_poly: &IntPoly) -> PiCheck {
    let (lo, hi) = (exact(lambda.lo), exact(lambda.hi));
    let at_lo = candidate.eval_rational(&lo);
    let at_hi = candidate.eval_rational(&hi);
    let point_root = lo == hi && at_lo.is_zero();
    let sign_change = (at_lo.is_positive() && at_hi.is_negative()) || (at_lo.is_negative() && at_hi.is_positive());
    let mid = (&lo + &hi) / BigRational::from_integer(2.into());
    let residual = candidate.eval_rational(&mid).abs().to_f64().unwrap_or(f64::INFINITY);
    let slope = candidate.derivative().eval_interval(lambda).abs().hi;
    let residual_bound = slope * (lambda.width() / 2.0) * (1.0 + 1e-9);
    PiCheck {
        candidate: candidate.clone(),
        residual,
        residual_bound,
        root_certified: point_root || sign_change,
        divides_char_poly: candidate.divides(char_poly),
    }
}

pub fn growth(reduced: &Automaton, n: usize, candidate: Option<&IntPoly>) -> GrowthReport {
    let trimmed = reduced.trim();
    let counts = trimmed.count_series(n);
    let char_poly = char_poly(&trimmed);
    let lambda = dominant_eigenvalue(&trimmed, DEFAULT_EIGEN_TOL);
    let pi_check = candidate.map(|c| check_candidate(c, &lambda, &char_poly));
    GrowthReport { counts, char_poly, lambda, pi_check }
}

/// Number of distinct maps given by words of length `n`, by enumeration.
pub fn count_elements_bruteforce(ctx: &BetaContext, n: usize, cap: usize) -> Result<BigUint, StructureError> {
    if n > cap {
        return Err(StructureError::TooLong { n, cap });
    }
    let k = ctx.alphabet_size();
    let mut seen = HashSet::new();
    let mut word = vec![0usize; n];
    loop {
        seen.insert(ctx.word_key(&word));
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(BigUint::from(seen.len()));
            }
            i -= 1;
            word[i] += 1;
            if word[i] < k {
                break;
            }
            word[i] = 0;
        }
    }
}
