//! Exact elements of `Z[β]` (algebraic mode) or `Z[X]` (transcendental mode).

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::poly::render_terms;

/// Which ring an element lives in. Algebraic elements carry the degree of
/// the working minimal polynomial so that mixing contexts is caught.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Algebraic(usize),
    Transcendental,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("cannot combine elements of {0:?} and {1:?}")]
    ModeMismatch(Ring, Ring),
}

/// Coefficients with respect to `1, β, β², …`, trailing zeros trimmed, so
/// equality of values is equality of representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    coeffs: Vec<BigInt>,
    ring: Ring,
}

impl FieldElem {
    pub fn zero(ring: Ring) -> Self {
        FieldElem { coeffs: Vec::new(), ring }
    }

    pub fn from_int(ring: Ring, n: impl Into<BigInt>) -> Self {
        FieldElem::from_coeffs(ring, vec![n.into()])
    }

    /// Build from a coefficient vector that is already reduced (algebraic
    /// mode: fewer than `d` entries once trailing zeros are dropped).
    pub fn from_coeffs(ring: Ring, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if let Ring::Algebraic(d) = ring {
            assert!(coeffs.len() <= d, "unreduced coefficient vector of length {} for degree {d}", coeffs.len());
        }
        FieldElem { coeffs, ring }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Polynomial degree of the representation, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn render(&self, var: &str) -> String {
        render_terms(self.coeffs.iter().enumerate().rev().map(|(i, c)| (i as i64, c.clone())), var)
    }

    /// Render `Σ c_i var^(-i)`, used when the stored variable is `1/var`.
    pub fn render_inverse(&self, var: &str) -> String {
        render_terms(self.coeffs.iter().enumerate().map(|(i, c)| (-(i as i64), c.clone())), var)
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = match self.ring {
            Ring::Algebraic(_) => "β",
            Ring::Transcendental => "X",
        };
        f.write_str(&self.render(var))
    }
}

fn check(x: &FieldElem, y: &FieldElem) -> Result<(), FieldError> {
    if x.ring == y.ring {
        Ok(())
    } else {
        Err(FieldError::ModeMismatch(x.ring, y.ring))
    }
}

fn combine(x: &FieldElem, y: &FieldElem, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> FieldElem {
    let n = x.coeffs.len().max(y.coeffs.len());
    let zero = BigInt::zero();
    let coeffs = (0..n).map(|i| f(x.coeffs.get(i).unwrap_or(&zero), y.coeffs.get(i).unwrap_or(&zero))).collect();
    FieldElem::from_coeffs(x.ring, coeffs)
}

pub fn fe_add(x: &FieldElem, y: &FieldElem) -> Result<FieldElem, FieldError> {
    check(x, y)?;
    Ok(combine(x, y, |a, b| a + b))
}

pub fn fe_sub(x: &FieldElem, y: &FieldElem) -> Result<FieldElem, FieldError> {
    check(x, y)?;
    Ok(combine(x, y, |a, b| a - b))
}

pub fn fe_neg(x: &FieldElem) -> FieldElem {
    FieldElem { coeffs: x.coeffs.iter().map(|c| -c).collect(), ring: x.ring }
}
