//! Dense integer polynomials, coefficients stored constant term first.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::numfield::interval::Interval;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "JsonInts", into = "JsonInts")]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Integer list in JSON: numbers when they fit in 64 bits, decimal strings
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct JsonInts(pub Vec<BigInt>);

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl Serialize for JsonInts {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use num_traits::ToPrimitive;
        s.collect_seq(self.0.iter().map(|c| match c.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(c.to_string()),
        }))
    }
}

impl<'de> Deserialize<'de> for JsonInts {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<JsonInt>::deserialize(d)?;
        raw.into_iter()
            .map(|v| match v {
                JsonInt::Small(v) => Ok(BigInt::from(v)),
                JsonInt::Big(s) => s.parse::<BigInt>().map_err(serde::de::Error::custom),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(JsonInts)
    }
}

impl From<JsonInts> for IntPoly {
    fn from(v: JsonInts) -> Self {
        IntPoly::new(v.0)
    }
}

impl From<IntPoly> for JsonInts {
    fn from(p: IntPoly) -> Self {
        JsonInts(p.coeffs)
    }
}

impl From<Vec<BigInt>> for IntPoly {
    fn from(coeffs: Vec<BigInt>) -> Self {
        IntPoly::new(coeffs)
    }
}

impl From<IntPoly> for Vec<BigInt> {
    fn from(p: IntPoly) -> Self {
        p.coeffs
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn reversed(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| num_integer::Integer::gcd(&g, c))
    }

    /// Coefficient list is a palindrome, possibly up to a global sign.
    pub fn is_self_reciprocal(&self) -> bool {
        let n = self.coeffs.len();
        if n == 0 {
            return false;
        }
        let same = (0..n).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i]);
        let anti = (0..n).all(|i| self.coeffs[i] == -&self.coeffs[n - 1 - i]);
        same || anti
    }

    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let mut acc = Interval::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&Interval::from_bigint(c));
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    fn to_rational(&self) -> Vec<BigRational> {
        self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect()
    }

    /// Degree of gcd(self, other) over the rationals.
    pub fn gcd_degree(&self, other: &IntPoly) -> Option<usize> {
        let mut a = self.to_rational();
        let mut b = other.to_rational();
        trim_q(&mut a);
        trim_q(&mut b);
        while !b.is_empty() {
            let r = rem_q(&a, &b);
            a = b;
            b = r;
        }
        a.len().checked_sub(1)
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd_degree(&self.derivative()) == Some(0),
        }
    }

    /// Whether `self` divides `other` exactly over the rationals.
    pub fn divides(&self, other: &IntPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        let a = other.to_rational();
        let b = self.to_rational();
        rem_q(&a, &b).is_empty()
    }

    /// Render with the given variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        render_terms(self.coeffs.iter().enumerate().rev().map(|(i, c)| (i as i64, c.clone())), var)
    }
}

fn trim_q(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn rem_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    trim_q(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let f = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            let t = &r[i + shift] - &f * c;
            r[i + shift] = t;
        }
        r.pop();
        trim_q(&mut r);
    }
    r
}

/// Render `(exponent, coefficient)` terms (already ordered) as `2x^3-x+1`.
pub fn render_terms(terms: impl Iterator<Item = (i64, BigInt)>, var: &str) -> String {
    let mut out = String::new();
    for (e, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let unit = mag.is_one();
        if e == 0 {
            out.push_str(&mag.to_string());
            continue;
        }
        if !unit {
            out.push_str(&mag.to_string());
        }
        out.push_str(var);
        if e != 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        assert_eq!(IntPoly::from_i64(&[1, -3, 1]).to_string(), "x^2-3x+1");
        assert_eq!(IntPoly::from_i64(&[0, 2]).to_string(), "2x");
        assert_eq!(IntPoly::from_i64(&[-1]).to_string(), "-1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = IntPoly::new(vec![BigInt::from(-3), big]);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"[-3,"123456789012345678901234567890"]"#);
        assert_eq!(serde_json::from_str::<IntPoly>(&text).unwrap(), p);
    }

    #[test]
    fn squarefree_detection() {
        assert!(IntPoly::from_i64(&[-1, -1, 1]).is_squarefree());
        // (x-1)^2
        assert!(!IntPoly::from_i64(&[1, -2, 1]).is_squarefree());
    }

    #[test]
    fn divisibility() {
        let f = IntPoly::from_i64(&[1, -3, 1]);
        // (x^2-3x+1)(x+2) = x^3 - x^2 - 5x + 2
        let g = IntPoly::from_i64(&[2, -5, -1, 1]);
        assert!(f.divides(&g));
        assert!(!f.divides(&IntPoly::from_i64(&[1, 0, 0, 1])));
    }

    #[test]
    fn reciprocity() {
        assert!(IntPoly::from_i64(&[1, -2, 1, -2, 1]).is_self_reciprocal());
        assert!(IntPoly::from_i64(&[-1, 1]).is_self_reciprocal());
        assert!(!IntPoly::from_i64(&[-3, 1]).is_self_reciprocal());
        assert!(!IntPoly::from_i64(&[-1, 1, -1, -1, 1]).is_self_reciprocal());
    }
}
