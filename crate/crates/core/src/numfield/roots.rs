//! Certified isolation of the complex roots of a squarefree integer polynomial.
//!
//! Approximations come from Aberth iteration in `f64`, are polished with
//! Weierstrass (Durand-Kerner) corrections in fixed-point arithmetic, and are
//! then certified: with `W_i = p(z_i) / (a_d * prod_{j != i} (z_i - z_j))`, all
//! roots lie in the union of the disks `|z - z_i| <= d |W_i|`, and pairwise
//! disjoint disks each hold exactly one root.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use super::fixed::{floor_shr, ComplexFixed, Fixed};
use crate::poly::IntPoly;

pub const MAX_ROOT_BITS: u32 = 16_384;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedRoot {
    re: BigInt,
    im: BigInt,
    radius: BigInt,
    bits: u32,
    real: bool,
}

impl CertifiedRoot {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Radius of the inclusion disk, scaled by `2^bits`.
    pub fn radius_scaled(&self) -> &BigInt {
        &self.radius
    }

    pub fn radius_f64(&self) -> f64 {
        Fixed::from_scaled(self.radius.clone(), self.radius.clone(), self.bits).to_interval().hi
    }

    pub fn approx(&self) -> Complex64 {
        let s = 2f64.powi(-(self.bits.min(1000) as i32));
        let shift = self.bits.saturating_sub(1000);
        Complex64::new(
            floor_shr(&self.re, shift).to_f64().unwrap_or(f64::NAN) * s,
            floor_shr(&self.im, shift).to_f64().unwrap_or(f64::NAN) * s,
        )
    }

    /// Axis-aligned box containing the root.
    pub fn enclosure(&self) -> ComplexFixed {
        let re = Fixed::from_scaled(&self.re - &self.radius, &self.re + &self.radius, self.bits);
        let im = if self.real {
            Fixed::zero(self.bits)
        } else {
            Fixed::from_scaled(&self.im - &self.radius, &self.im + &self.radius, self.bits)
        };
        ComplexFixed { re, im }
    }

    /// Enclosure of the root's modulus.
    pub fn modulus(&self) -> Fixed {
        if self.real {
            return self.enclosure().re.abs();
        }
        let center = ComplexFixed {
            re: Fixed::from_scaled(self.re.clone(), self.re.clone(), self.bits),
            im: Fixed::from_scaled(self.im.clone(), self.im.clone(), self.bits),
        };
        let m = center.abs().widen(&self.radius);
        if m.lo_scaled().is_negative() {
            Fixed::from_scaled(BigInt::zero(), m.hi_scaled().clone(), self.bits)
        } else {
            m
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("polynomial has degree zero")]
    Constant,
    #[error("root isolation did not certify within {0} bits")]
    PrecisionExhausted(u32),
}

/// Aberth-Ehrlich approximations of all complex roots.
pub fn approximate_roots(p: &IntPoly) -> Vec<Complex64> {
    let n = match p.degree() {
        None | Some(0) => return Vec::new(),
        Some(n) => n,
    };
    let lead = p.leading().unwrap().to_f64().unwrap();
    let c: Vec<f64> = p.coeffs().iter().map(|x| x.to_f64().unwrap() / lead).collect();
    if n == 1 {
        return vec![Complex64::new(-c[0], 0.0)];
    }
    let radius = 1.0 + c[..n].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let start = radius.min(c[0].abs().powf(1.0 / n as f64).max(0.5) * 1.1).max(0.1);
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(start, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4)).collect();
    let eval = |x: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            d = d * x + v;
            v = v * x + a;
        }
        (v, d)
    };
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let (v, d) = eval(z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let sum: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let w = ratio / (1.0 - ratio * sum);
            if w.is_finite() {
                z[k] -= w;
                worst = worst.max(w.norm() / z[k].norm().max(1e-300));
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    z
}

#[derive(Clone, Debug)]
struct Point {
    re: BigInt,
    im: BigInt,
}

fn f64_scaled(x: f64, bits: u32) -> BigInt {
    Fixed::from_interval(&super::interval::Interval::point(x), bits).lo_scaled().clone()
}

fn pmul(a: &Point, b: &Point, bits: u32) -> Point {
    Point {
        re: floor_shr(&(&a.re * &b.re - &a.im * &b.im), bits),
        im: floor_shr(&(&a.re * &b.im + &a.im * &b.re), bits),
    }
}

fn pdiv(a: &Point, b: &Point, bits: u32) -> Option<Point> {
    let den = &b.re * &b.re + &b.im * &b.im;
    if den.is_zero() {
        return None;
    }
    let re = (&a.re * &b.re + &a.im * &b.im) << bits;
    let im = (&a.im * &b.re - &a.re * &b.im) << bits;
    Some(Point { re: num_integer::Integer::div_floor(&re, &den), im: num_integer::Integer::div_floor(&im, &den) })
}

fn peval(p: &IntPoly, z: &Point, bits: u32) -> Point {
    let mut acc = Point { re: BigInt::zero(), im: BigInt::zero() };
    for c in p.coeffs().iter().rev() {
        acc = pmul(&acc, z, bits);
        acc.re += c << bits;
    }
    acc
}

fn weierstrass(p: &IntPoly, z: &[Point], i: usize, bits: u32) -> Option<Point> {
    let lead = p.leading().unwrap();
    let mut den = Point { re: lead << bits, im: BigInt::zero() };
    for (j, zj) in z.iter().enumerate() {
        if j != i {
            let diff = Point { re: &z[i].re - &zj.re, im: &z[i].im - &zj.im };
            den = pmul(&den, &diff, bits);
        }
    }
    pdiv(&peval(p, &z[i], bits), &den, bits)
}

fn polish(p: &IntPoly, z: &mut [Point], bits: u32) {
    let tiny = BigInt::from(4);
    for _ in 0..200 {
        let mut done = true;
        for i in 0..z.len() {
            let Some(w) = weierstrass(p, z, i, bits) else {
                return;
            };
            if w.re.abs() > tiny || w.im.abs() > tiny {
                done = false;
            }
            z[i].re -= &w.re;
            z[i].im -= &w.im;
        }
        if done {
            break;
        }
    }
}

fn point_box(z: &Point, bits: u32) -> ComplexFixed {
    ComplexFixed {
        re: Fixed::from_scaled(z.re.clone(), z.re.clone(), bits),
        im: Fixed::from_scaled(z.im.clone(), z.im.clone(), bits),
    }
}

fn certify(p: &IntPoly, z: &[Point], bits: u32) -> Option<Vec<CertifiedRoot>> {
    let n = z.len();
    let boxes: Vec<ComplexFixed> = z.iter().map(|x| point_box(x, bits)).collect();
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let mut val = ComplexFixed::from_int(&BigInt::zero(), bits);
        for c in p.coeffs().iter().rev() {
            val = val.mul(&boxes[i]).add_int(c);
        }
        let mut den = ComplexFixed::from_int(p.leading().unwrap(), bits);
        for j in 0..n {
            if j != i {
                den = den.mul(&boxes[i].sub(&boxes[j]));
            }
        }
        let den_abs = den.abs();
        if den_abs.contains_zero() {
            return None;
        }
        let w = val.abs().div(&den_abs);
        radii.push(w.hi_scaled() * BigInt::from(n));
    }
    for i in 0..n {
        for j in i + 1..n {
            let dist = boxes[i].sub(&boxes[j]).abs();
            if dist.lo_scaled() <= &(&radii[i] + &radii[j]) {
                return None;
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let conj = ComplexFixed { re: boxes[i].re.clone(), im: boxes[i].im.neg() };
        let conj_isolated = (0..n).filter(|&j| j != i).all(|j| {
            let d = conj.sub(&boxes[j]).abs();
            d.lo_scaled() > &(&radii[i] + &radii[j])
        });
        let off_axis = z[i].im.abs() > radii[i];
        let real = if conj_isolated {
            true
        } else if off_axis {
            false
        } else {
            return None;
        };
        out.push(CertifiedRoot {
            re: z[i].re.clone(),
            im: if real { BigInt::zero() } else { z[i].im.clone() },
            radius: radii[i].clone(),
            bits,
            real,
        });
    }
    Some(out)
}

/// Certified roots whose inclusion radii are all at most `10^-digits`.
pub fn certified_roots(p: &IntPoly, digits: u32) -> Result<Vec<CertifiedRoot>, RootError> {
    let seeds = approximate_roots(p);
    if seeds.is_empty() {
        return Err(RootError::Constant);
    }
    let min_bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32;
    let mut bits = min_bits.max(64);
    let mut pts: Vec<Point> =
        seeds.iter().map(|s| Point { re: f64_scaled(s.re, bits), im: f64_scaled(s.im, bits) }).collect();
    let ten_pow = num_traits::pow(BigInt::from(10), digits as usize);
    loop {
        polish(p, &mut pts, bits);
        if let Some(roots) = certify(p, &pts, bits) {
            let limit = (BigInt::from(1) << bits) / &ten_pow;
            if roots.iter().all(|r| r.radius <= limit) {
                return Ok(roots);
            }
        }
        if bits >= MAX_ROOT_BITS {
            return Err(RootError::PrecisionExhausted(bits));
        }
        let next = (bits * 2).min(MAX_ROOT_BITS);
        let shift = next - bits;
        for z in pts.iter_mut() {
            z.re <<= shift;
            z.im <<= shift;
        }
        bits = next;
    }
}

/// Certified roots at a working precision of at least `bits` bits.
pub fn certified_roots_bits(p: &IntPoly, bits: u32) -> Result<Vec<CertifiedRoot>, RootError> {
    let digits = ((bits.saturating_sub(32)) as f64 / std::f64::consts::LOG2_10).floor() as u32;
    certified_roots(p, digits.max(1))
}
