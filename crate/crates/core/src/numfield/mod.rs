//! Exact arithmetic in `Z[β]` and `Z[X]`, with certified embeddings of β.
//!
//! Algebraic contexts always work with a monic polynomial. When the supplied
//! minimal polynomial is not monic but has constant term ±1, the context runs
//! on `u = 1/β` instead: the reversed polynomial is monic, and every digit
//! `P(β)` is replaced by `β^-m P(β)`, which is a polynomial in `u`. A pair of
//! words is a relation for the original data exactly when the reversed pair
//! is a relation for the inverted data, so callers only need to transpose.

pub mod config;
pub mod elem;
pub mod fixed;
pub mod interval;
pub mod roots;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use elem::{fe_add, fe_neg, fe_sub, FieldElem, FieldError, Ring};

use crate::poly::IntPoly;
use fixed::{ComplexFixed, Fixed};
use interval::{ComplexBox, Interval};
use roots::{CertifiedRoot, RootError};

pub const DEFAULT_PRECISION: u32 = 12;

// Unit-circle screening for self-reciprocal polynomials.
const UNIT_BAND: f64 = 1e-9;
const UNIT_SCREEN_DIGITS: u32 = 14;
const MAX_CLASSIFY_DIGITS: u32 = 2400;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ContextError {
    #[error("the minimal polynomial must have degree at least 1")]
    ConstantMinPoly,
    #[error("the minimal polynomial's coefficients share the factor {0}")]
    NotPrimitive(BigInt),
    #[error("the minimal polynomial is not squarefree")]
    NotSquarefree,
    #[error("the minimal polynomial vanishes at 0")]
    ZeroRoot,
    #[error("β is a root of unity")]
    RootOfUnity,
    #[error("neither β nor 1/β is an algebraic integer")]
    UnsupportedDenominator,
    #[error("β has a conjugate on the unit circle")]
    UnitCircleConjugate,
    #[error("the digit set is empty")]
    EmptyDigits,
    #[error("digits {0} and {1} are equal")]
    DuplicateDigits(usize, usize),
    #[error("{names} digit names given for {digits} digits")]
    NameCount { names: usize, digits: usize },
    #[error("operation needs an algebraic context")]
    Transcendental,
    #[error(transparent)]
    Roots(#[from] RootError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetaSpec {
    MinPoly(IntPoly),
    Transcendental,
}

#[derive(Clone, Debug)]
pub struct ContextOptions {
    /// Decimal digits of accuracy for the conjugate enclosures.
    pub precision: u32,
    pub names: Option<Vec<String>>,
}

impl Default for ContextOptions {
    fn default() -> Self {
        ContextOptions { precision: DEFAULT_PRECISION, names: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EmbeddingClass {
    Expanding,
    Contracting,
    Unit,
}

/// One complex conjugate of the working generator (β, or 1/β when inverted).
#[derive(Clone, Debug)]
pub struct Embedding {
    pub root: CertifiedRoot,
    pub modulus: Interval,
    pub class: EmbeddingClass,
}

/// `max_{a in A-A} |σ(a)| / (|γ| - 1)` for an expanding embedding.
#[derive(Clone, Debug)]
pub struct PruneBound {
    pub embedding: usize,
    pub bound: Interval,
}

#[derive(Clone, Debug)]
pub struct BetaContext {
    ring: Ring,
    minpoly: Option<IntPoly>,
    working: Option<IntPoly>,
    inverted: bool,
    input_digits: Vec<IntPoly>,
    digits: Vec<FieldElem>,
    names: Vec<String>,
    embeddings: Vec<Embedding>,
    prune_bounds: Vec<PruneBound>,
    blocked: bool,
    precision: u32,
}

fn default_name(i: usize, p: &IntPoly) -> String {
    match p.degree() {
        None => "0".to_string(),
        Some(0) => p.coeff(0).to_string(),
        Some(_) => format!("d{i}"),
    }
}

/// Remainder of `v` modulo a monic polynomial.
fn reduce_monic(mut v: Vec<BigInt>, p: &IntPoly) -> Vec<BigInt> {
    let d = p.degree().expect("nonzero modulus");
    let pc = p.coeffs();
    while v.len() > d {
        let k = v.len() - 1;
        let top = v.pop().unwrap();
        if !top.is_zero() {
            for i in 0..d {
                v[k - d + i] -= &top * &pc[i];
            }
        }
    }
    v
}

pub fn make_context(
    beta: &BetaSpec,
    digits: &[IntPoly],
    options: &ContextOptions,
) -> Result<BetaContext, ContextError> {
    if digits.is_empty() {
        return Err(ContextError::EmptyDigits);
    }
    let names = match &options.names {
        Some(n) if n.len() != digits.len() => {
            return Err(ContextError::NameCount { names: n.len(), digits: digits.len() })
        }
        Some(n) => n.clone(),
        None => digits.iter().enumerate().map(|(i, p)| default_name(i, p)).collect(),
    };
    let mut ctx = match beta {
        BetaSpec::Transcendental => BetaContext {
            ring: Ring::Transcendental,
            minpoly: None,
            working: None,
            inverted: false,
            input_digits: digits.to_vec(),
            digits: digits.iter().map(|p| FieldElem::from_coeffs(Ring::Transcendental, p.coeffs().to_vec())).collect(),
            names,
            embeddings: Vec::new(),
            prune_bounds: Vec::new(),
            blocked: false,
            precision: options.precision,
        },
        BetaSpec::MinPoly(p) => algebraic_context(p, digits, names, options.precision)?,
    };
    for i in 0..ctx.digits.len() {
        for j in i + 1..ctx.digits.len() {
            if ctx.digits[i] == ctx.digits[j] {
                return Err(ContextError::DuplicateDigits(i, j));
            }
        }
    }
    if ctx.is_algebraic() {
        ctx.prune_bounds = ctx.compute_prune_bounds();
    }
    Ok(ctx)
}

fn algebraic_context(
    p: &IntPoly,
    digits: &[IntPoly],
    names: Vec<String>,
    precision: u32,
) -> Result<BetaContext, ContextError> {
    let d = match p.degree() {
        None | Some(0) => return Err(ContextError::ConstantMinPoly),
        Some(d) => d,
    };
    let content = p.content();
    if !content.is_one() {
        return Err(ContextError::NotPrimitive(content));
    }
    if p.coeff(0).is_zero() {
        return Err(ContextError::ZeroRoot);
    }
    if !p.is_squarefree() {
        return Err(ContextError::NotSquarefree);
    }
    if d == 1 && p.coeff(0).abs() == p.coeff(1).abs() {
        return Err(ContextError::RootOfUnity);
    }
    let lead = p.leading().unwrap().clone();
    let constant = p.coeff(0);
    let (working, inverted) = if lead.abs().is_one() {
        (if lead.is_negative() { p.neg() } else { p.clone() }, false)
    } else if constant.abs().is_one() {
        let r = p.reversed();
        (if constant.is_negative() { r.neg() } else { r }, true)
    } else {
        return Err(ContextError::UnsupportedDenominator);
    };
    let ring = Ring::Algebraic(d);
    let shift = digits.iter().filter_map(|q| q.degree()).max().unwrap_or(0);
    let converted = digits
        .iter()
        .map(|q| {
            let mut v = q.coeffs().to_vec();
            if inverted {
                v.resize(shift + 1, BigInt::zero());
                v.reverse();
            }
            FieldElem::from_coeffs(ring, reduce_monic(v, &working))
        })
        .collect();
    let (embeddings, blocked) = classify_roots(&working, precision)?;
    Ok(BetaContext {
        ring,
        minpoly: Some(p.clone()),
        working: Some(working),
        inverted,
        input_digits: digits.to_vec(),
        digits: converted,
        names,
        embeddings,
        prune_bounds: Vec::new(),
        blocked,
        precision,
    })
}

fn classify_roots(working: &IntPoly, precision: u32) -> Result<(Vec<Embedding>, bool), ContextError> {
    let self_reciprocal = working.is_self_reciprocal();
    let mut digits = if self_reciprocal { precision.max(UNIT_SCREEN_DIGITS) } else { precision };
    loop {
        let roots = roots::certified_roots(working, digits)?;
        let mut blocked = false;
        let mut resolved = true;
        let mut out = Vec::with_capacity(roots.len());
        for root in roots {
            let m = root.modulus();
            let one = BigInt::one() << m.bits();
            let class = if m.lo_scaled() > &one {
                EmbeddingClass::Expanding
            } else if m.hi_scaled() < &one {
                EmbeddingClass::Contracting
            } else {
                resolved = false;
                EmbeddingClass::Unit
            };
            let modulus = m.to_interval();
            let near_unit = modulus.intersects(&Interval::new(1.0 - UNIT_BAND, 1.0 + UNIT_BAND));
            if self_reciprocal && near_unit {
                blocked = true;
                out.push(Embedding { root, modulus, class: EmbeddingClass::Unit });
            } else {
                out.push(Embedding { root, modulus, class });
            }
        }
        if blocked || resolved {
            out.sort_by(|a, b| {
                let ka = (-a.modulus.mid(), a.root.approx().im);
                let kb = (-b.modulus.mid(), b.root.approx().im);
                ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
            });
            return Ok((out, blocked));
        }
        if digits >= MAX_CLASSIFY_DIGITS {
            return Err(RootError::PrecisionExhausted(roots::MAX_ROOT_BITS).into());
        }
        digits *= 2;
    }
}

/// Horner evaluation of an element at a complex enclosure.
pub fn eval_box(x: &FieldElem, z: &ComplexBox) -> ComplexBox {
    let mut acc = ComplexBox::ZERO;
    for c in x.coeffs().iter().rev() {
        acc = acc.mul(z).add(&ComplexBox::real(Interval::from_bigint(c)));
    }
    acc
}

pub fn eval_fixed(x: &FieldElem, z: &ComplexFixed) -> ComplexFixed {
    let mut acc = ComplexFixed::from_int(&BigInt::zero(), z.bits());
    for c in x.coeffs().iter().rev() {
        acc = acc.mul(z).add_int(c);
    }
    acc
}

impl BetaContext {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_algebraic(&self) -> bool {
        matches!(self.ring, Ring::Algebraic(_))
    }

    /// Minimal polynomial as supplied.
    pub fn minpoly(&self) -> Option<&IntPoly> {
        self.minpoly.as_ref()
    }

    /// Monic polynomial of the generator the construction runs on.
    pub fn working_minpoly(&self) -> Option<&IntPoly> {
        self.working.as_ref()
    }

    pub fn inverted(&self) -> bool {
        self.inverted
    }

    pub fn input_digits(&self) -> &[IntPoly] {
        &self.input_digits
    }

    /// Digits in working coordinates.
    pub fn digits(&self) -> &[FieldElem] {
        &self.digits
    }

    pub fn alphabet_size(&self) -> usize {
        self.digits.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn embeddings(&self) -> &[Embedding] {
        &self.embeddings
    }

    pub fn prune_bounds(&self) -> &[PruneBound] {
        &self.prune_bounds
    }

    /// A conjugate could not be separated from the unit circle.
    pub fn blocked(&self) -> bool {
        self.blocked
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::zero(self.ring)
    }

    /// Reduce a coefficient vector in the working generator.
    pub fn reduce(&self, coeffs: Vec<BigInt>) -> FieldElem {
        match &self.working {
            Some(p) => FieldElem::from_coeffs(self.ring, reduce_monic(coeffs, p)),
            None => FieldElem::from_coeffs(self.ring, coeffs),
        }
    }

    /// Multiply by the working generator.
    pub fn mul_base(&self, x: &FieldElem) -> FieldElem {
        if x.is_zero() {
            return x.clone();
        }
        let mut v = Vec::with_capacity(x.coeffs().len() + 1);
        v.push(BigInt::zero());
        v.extend_from_slice(x.coeffs());
        self.reduce(v)
    }

    /// `β·x + (t_g - t_h)` in working coordinates.
    pub fn step(&self, x: &FieldElem, g: usize, h: usize) -> FieldElem {
        let shifted = self.mul_base(x);
        let diff = fe_sub(&self.digits[g], &self.digits[h]).expect("digits share the context ring");
        fe_add(&shifted, &diff).expect("same ring")
    }

    /// Canonical key of the map encoded by a word: two words of equal length
    /// give the same affine map exactly when their keys are equal.
    pub fn word_key(&self, word: &[usize]) -> FieldElem {
        let mut acc = self.zero();
        let mut fold = |i: usize| {
            acc = fe_add(&self.mul_base(&acc), &self.digits[i]).expect("same ring");
        };
        if self.inverted {
            word.iter().rev().for_each(|&i| fold(i));
        } else {
            word.iter().for_each(|&i| fold(i));
        }
        acc
    }

    /// Whether `Σ c_e β^e` vanishes, for a Laurent polynomial in the
    /// user-facing β (or X).
    pub fn laurent_is_zero(&self, terms: &[(i64, BigInt)]) -> bool {
        let sign = if self.inverted { -1 } else { 1 };
        let exps: Vec<i64> = terms.iter().map(|(e, _)| sign * e).collect();
        let Some(&low) = exps.iter().min() else {
            return true;
        };
        let high = *exps.iter().max().unwrap();
        let mut v = vec![BigInt::zero(); (high - low) as usize + 1];
        for ((_, c), e) in terms.iter().zip(&exps) {
            v[(e - low) as usize] += c;
        }
        self.reduce(v).is_zero()
    }

    /// Display form of an element, always in terms of the user-facing
    /// generator (negative powers for inverted contexts).
    pub fn render(&self, x: &FieldElem) -> String {
        match self.ring {
            Ring::Transcendental => x.render("X"),
            Ring::Algebraic(_) if self.inverted => x.render_inverse("β"),
            Ring::Algebraic(_) => x.render("β"),
        }
    }

    pub fn eval_at(&self, x: &FieldElem, embedding: usize) -> ComplexBox {
        eval_box(x, &self.embeddings[embedding].root.enclosure().to_box())
    }

    /// Certified enclosure of `|σ_i(x)|`.
    pub fn fe_abs_at(&self, x: &FieldElem, embedding: usize) -> Result<Interval, ContextError> {
        if !self.is_algebraic() {
            return Err(ContextError::Transcendental);
        }
        Ok(self.eval_at(x, embedding).abs())
    }

    /// Roots recomputed with at least `bits` bits, in embedding order.
    pub fn refined_roots(&self, bits: u32) -> Result<Vec<CertifiedRoot>, ContextError> {
        let p = self.working.as_ref().ok_or(ContextError::Transcendental)?;
        let fresh = roots::certified_roots_bits(p, bits)?;
        Ok(self
            .embeddings
            .iter()
            .map(|e| {
                let z = e.root.approx();
                fresh
                    .iter()
                    .min_by(|a, b| (a.approx() - z).norm().total_cmp(&(b.approx() - z).norm()))
                    .expect("same number of roots")
                    .clone()
            })
            .collect())
    }

    /// `|σ(x)|` at a root enclosure of arbitrary precision.
    pub fn abs_at_root(&self, x: &FieldElem, root: &CertifiedRoot) -> Fixed {
        eval_fixed(x, &root.enclosure()).abs()
    }

    /// Enclosures of `|σ_i(t_g - t_h)|` over unordered pairs `g < h`.
    pub fn digit_difference_moduli(&self, embedding: usize) -> Vec<Interval> {
        let mut out = Vec::new();
        for g in 0..self.digits.len() {
            for h in g + 1..self.digits.len() {
                let diff = fe_sub(&self.digits[g], &self.digits[h]).expect("same ring");
                out.push(self.eval_at(&diff, embedding).abs());
            }
        }
        out
    }

    fn compute_prune_bounds(&self) -> Vec<PruneBound> {
        self.embeddings
            .iter()
            .enumerate()
            .filter(|(_, e)| e.class == EmbeddingClass::Expanding)
            .map(|(i, e)| {
                let num = self.digit_difference_moduli(i).into_iter().fold(Interval::ZERO, |m, x| m.max(&x));
                let den = e.modulus.sub(&Interval::ONE);
                let den =
                    if den.lo > 0.0 { den } else { Interval::new(f64::MIN_POSITIVE, den.hi.max(f64::MIN_POSITIVE)) };
                PruneBound { embedding: i, bound: num.div(&den) }
            })
            .collect()
    }

    /// `|a_d| · Π max(1, |γ|)`, computed on the working polynomial (the
    /// measure is invariant under reversal).
    pub fn mahler_measure(&self) -> Result<Interval, ContextError> {
        if !self.is_algebraic() {
            return Err(ContextError::Transcendental);
        }
        Ok(self.embeddings.iter().fold(Interval::ONE, |acc, e| acc.mul(&e.modulus.max(&Interval::ONE))))
    }
}
