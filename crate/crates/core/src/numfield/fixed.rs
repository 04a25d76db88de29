//! Arbitrary-precision fixed-point interval arithmetic.
//!
//! A [`Fixed`] holds integer endpoints scaled by `2^bits`; every inexact
//! operation rounds the lower endpoint down and the upper endpoint up, so an
//! enclosure stays rigorous at any working precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::{ComplexBox, Interval};

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k
}

pub(crate) fn floor_shr(x: &BigInt, k: u32) -> BigInt {
    x.div_floor(&pow2(k))
}

pub(crate) fn ceil_shr(x: &BigInt, k: u32) -> BigInt {
    -((-x).div_floor(&pow2(k)))
}

fn ldexp(mut v: f64, mut e: i64) -> f64 {
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

/// Largest f64 not above `m / 2^bits` (`down`), or smallest not below it.
fn scaled_to_f64(m: &BigInt, bits: u32, down: bool) -> f64 {
    if m.is_zero() {
        return 0.0;
    }
    let len = m.bits();
    let shift = len.saturating_sub(53) as u32;
    let top = if down { floor_shr(m, shift) } else { ceil_shr(m, shift) };
    let v = top.to_f64().expect("53-bit integer converts exactly");
    let r = ldexp(v, shift as i64 - bits as i64);
    if r.abs() < 1e-300 || !r.is_finite() {
        if down {
            r.next_down()
        } else {
            r.next_up()
        }
    } else {
        r
    }
}

/// Exact `floor` (or `ceil`) of `x * 2^bits` for a finite f64.
fn f64_to_scaled(x: f64, bits: u32, down: bool) -> BigInt {
    assert!(x.is_finite(), "non-finite value in fixed-point conversion");
    if x == 0.0 {
        return BigInt::zero();
    }
    let raw = x.to_bits();
    let exp = ((raw >> 52) & 0x7ff) as i64;
    let frac = raw & ((1u64 << 52) - 1);
    let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
    let mut m = BigInt::from(mant);
    if x < 0.0 {
        m = -m;
    }
    let total = e + bits as i64;
    if total >= 0 {
        m << (total as u32)
    } else if down {
        floor_shr(&m, (-total) as u32)
    } else {
        ceil_shr(&m, (-total) as u32)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixed {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

impl Fixed {
    pub fn zero(bits: u32) -> Self {
        Fixed { lo: BigInt::zero(), hi: BigInt::zero(), bits }
    }

    pub fn from_int(n: &BigInt, bits: u32) -> Self {
        let v = n << bits;
        Fixed { lo: v.clone(), hi: v, bits }
    }

    /// Interval from raw scaled endpoints.
    pub fn from_scaled(lo: BigInt, hi: BigInt, bits: u32) -> Self {
        debug_assert!(lo <= hi);
        Fixed { lo, hi, bits }
    }

    pub fn from_interval(i: &Interval, bits: u32) -> Self {
        Fixed { lo: f64_to_scaled(i.lo, bits, true), hi: f64_to_scaled(i.hi, bits, false), bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn lo_scaled(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi_scaled(&self) -> &BigInt {
        &self.hi
    }

    pub fn to_interval(&self) -> Interval {
        Interval::new(scaled_to_f64(&self.lo, self.bits, true), scaled_to_f64(&self.hi, self.bits, false))
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.sign() != num_bigint::Sign::Plus && self.hi.sign() != num_bigint::Sign::Minus
    }

    /// Width scaled by `2^bits`.
    pub fn width_scaled(&self) -> BigInt {
        &self.hi - &self.lo
    }

    /// Certainly strictly less than `other`.
    pub fn certainly_lt(&self, other: &Fixed) -> bool {
        debug_assert_eq!(self.bits, other.bits);
        self.hi < other.lo
    }

    pub fn certainly_ge(&self, other: &Fixed) -> bool {
        debug_assert_eq!(self.bits, other.bits);
        self.lo >= other.hi
    }

    pub fn add(&self, o: &Fixed) -> Fixed {
        Fixed { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, bits: self.bits }
    }

    pub fn sub(&self, o: &Fixed) -> Fixed {
        Fixed { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo, bits: self.bits }
    }

    pub fn neg(&self) -> Fixed {
        Fixed { lo: -&self.hi, hi: -&self.lo, bits: self.bits }
    }

    pub fn mul(&self, o: &Fixed) -> Fixed {
        let prods = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = prods.iter().min().unwrap();
        let hi = prods.iter().max().unwrap();
        Fixed { lo: floor_shr(lo, self.bits), hi: ceil_shr(hi, self.bits), bits: self.bits }
    }

    pub fn scale_int(&self, k: &BigInt) -> Fixed {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            Fixed { lo: a, hi: b, bits: self.bits }
        } else {
            Fixed { lo: b, hi: a, bits: self.bits }
        }
    }

    pub fn abs(&self) -> Fixed {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let m = if self.hi > -&self.lo { self.hi.clone() } else { -&self.lo };
            Fixed { lo: BigInt::zero(), hi: m, bits: self.bits }
        }
    }

    pub fn sqr(&self) -> Fixed {
        let a = self.abs();
        Fixed { lo: floor_shr(&(&a.lo * &a.lo), self.bits), hi: ceil_shr(&(&a.hi * &a.hi), self.bits), bits: self.bits }
    }

    /// Division by an interval excluding zero.
    pub fn div(&self, o: &Fixed) -> Fixed {
        assert!(!o.contains_zero(), "fixed-point division by a range containing zero");
        let ends = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for (a, b) in ends {
            let num = a << self.bits;
            let q_lo = num.div_floor(b);
            let q_hi = -((-&num).div_floor(b));
            lo = Some(match lo {
                Some(l) if l <= q_lo => l,
                _ => q_lo,
            });
            hi = Some(match hi {
                Some(h) if h >= q_hi => h,
                _ => q_hi,
            });
        }
        Fixed { lo: lo.unwrap(), hi: hi.unwrap(), bits: self.bits }
    }

    pub fn sqrt(&self) -> Fixed {
        let lo = if self.lo.is_positive() { (&self.lo << self.bits).sqrt() } else { BigInt::zero() };
        let hi = if self.hi.is_positive() {
            let n = &self.hi << self.bits;
            let r = n.sqrt();
            if &r * &r == n {
                r
            } else {
                r + 1
            }
        } else {
            BigInt::zero()
        };
        Fixed { lo, hi, bits: self.bits }
    }

    /// Widen symmetrically by a non-negative scaled radius.
    pub fn widen(&self, r: &BigInt) -> Fixed {
        Fixed { lo: &self.lo - r, hi: &self.hi + r, bits: self.bits }
    }
}

/// Rectangular complex enclosure with fixed-point endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexFixed {
    pub re: Fixed,
    pub im: Fixed,
}

impl ComplexFixed {
    pub fn real(re: Fixed) -> Self {
        let bits = re.bits();
        ComplexFixed { re, im: Fixed::zero(bits) }
    }

    pub fn from_int(n: &BigInt, bits: u32) -> Self {
        ComplexFixed::real(Fixed::from_int(n, bits))
    }

    pub fn bits(&self) -> u32 {
        self.re.bits()
    }

    fn is_real(&self) -> bool {
        self.im.lo.is_zero() && self.im.hi.is_zero()
    }

    pub fn add(&self, o: &ComplexFixed) -> ComplexFixed {
        ComplexFixed { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &ComplexFixed) -> ComplexFixed {
        ComplexFixed { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &ComplexFixed) -> ComplexFixed {
        if self.is_real() && o.is_real() {
            return ComplexFixed::real(self.re.mul(&o.re));
        }
        ComplexFixed {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn add_int(&self, k: &BigInt) -> ComplexFixed {
        ComplexFixed { re: self.re.add(&Fixed::from_int(k, self.bits())), im: self.im.clone() }
    }

    pub fn abs(&self) -> Fixed {
        if self.is_real() {
            return self.re.abs();
        }
        self.re.sqr().add(&self.im.sqr()).sqrt()
    }

    pub fn to_box(&self) -> ComplexBox {
        ComplexBox { re: self.re.to_interval(), im: self.im.to_interval() }
    }
}
