//! Counting accepted words and the spectral data of the adjacency matrix.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use super::Automaton;
use crate::numfield::interval::Interval;
use crate::poly::IntPoly;

pub const DEFAULT_EIGEN_TOL: f64 = 1e-10;
const MAX_POWER_STEPS: usize = 1_000_000;

impl Automaton {
    /// `M[s][t]` = number of letters leading from `s` to `t`.
    pub fn adjacency(&self) -> Vec<Vec<u64>> {
        let n = self.state_count();
        let mut m = vec![vec![0u64; n]; n];
        for (s, _, t) in self.transitions() {
            m[s][t] += 1;
        }
        m
    }

    /// Number of accepted words of each length `0..=n_max`.
    pub fn count_series(&self, n_max: usize) -> Vec<BigUint> {
        let d = if self.is_deterministic() { self.trim() } else { self.determinize().trim() };
        let n = d.state_count();
        let mut v = vec![BigUint::zero(); n];
        for &s in d.initials() {
            v[s] += 1u32;
        }
        let mut out = Vec::with_capacity(n_max + 1);
        for step in 0..=n_max {
            out.push((0..n).filter(|&s| d.is_final(s)).map(|s| v[s].clone()).sum());
            if step == n_max {
                break;
            }
            let mut next = vec![BigUint::zero(); n];
            for (s, _, t) in d.transitions() {
                if !v[s].is_zero() {
                    next[t] += &v[s];
                }
            }
            v = next;
        }
        out
    }

    pub fn count_words(&self, n: usize) -> BigUint {
        self.count_series(n).pop().unwrap_or_default()
    }
}

/// Characteristic polynomial `det(xI - M)` of the adjacency matrix, by the
/// division-free Berkowitz recursion.
pub fn char_poly(a: &Automaton) -> IntPoly {
    let m: Vec<Vec<BigInt>> =
        a.adjacency().into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect();
    let mut v = berkowitz(&m);
    v.reverse();
    IntPoly::new(v)
}

// Coefficients of det(xI - M), highest degree first.
fn berkowitz(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = m.len();
    if n == 0 {
        return vec![BigInt::from(1)];
    }
    if n == 1 {
        return vec![BigInt::from(1), -&m[0][0]];
    }
    // m = [[a, R], [C, A]]
    let a = &m[0][0];
    let r: Vec<BigInt> = m[0][1..].to_vec();
    let sub: Vec<Vec<BigInt>> = m[1..].iter().map(|row| row[1..].to_vec()).collect();
    let mut col: Vec<BigInt> = m[1..].iter().map(|row| row[0].clone()).collect();
    // diagonals of the Toeplitz matrix: 1, -a, -RC, -RAC, -RA^2C, ...
    let mut diags = vec![BigInt::from(1), -a];
    for i in 0..n - 1 {
        let rc: BigInt = r.iter().zip(&col).map(|(x, y)| x * y).sum();
        diags.push(-rc);
        if i + 1 < n - 1 {
            col = sub.iter().map(|row| row.iter().zip(&col).map(|(x, y)| x * y).sum()).collect();
        }
    }
    let inner = berkowitz(&sub);
    // (n+1) x n lower-triangular Toeplitz times inner (length n)
    (0..=n).map(|i| (0..n.min(i + 1)).map(|j| &diags[i - j] * &inner[j]).sum()).collect()
}

fn scc(adj: &[Vec<u64>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let succ: Vec<Vec<usize>> = adj.iter().map(|r| (0..n).filter(|&t| r[t] > 0).collect()).collect();
    // Kosaraju with explicit stacks
    let mut seen = vec![false; n];
    let mut finish = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some((s, i)) = stack.pop() {
            if i < succ[s].len() {
                stack.push((s, i + 1));
                let t = succ[s][i];
                if !seen[t] {
                    seen[t] = true;
                    stack.push((t, 0));
                }
            } else {
                finish.push(s);
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for &root in finish.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![root];
        comp[root] = id;
        let mut i = 0;
        while i < members.len() {
            let s = members[i];
            i += 1;
            for p in 0..n {
                if adj[p][s] > 0 && comp[p] == usize::MAX {
                    comp[p] = id;
                    members.push(p);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

// Perron root of an irreducible block, bracketed by Collatz-Wielandt ratios
// of power-iteration vectors for B + I.
fn block_radius(b: &[Vec<f64>], tol: f64) -> Interval {
    let n = b.len();
    if n == 1 {
        return Interval::point(b[0][0]);
    }
    let mut x = vec![1.0; n];
    let mut best = Interval::new(0.0, f64::INFINITY);
    for step in 0..MAX_POWER_STEPS {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut acc = Interval::ZERO;
            for j in 0..n {
                if b[i][j] != 0.0 {
                    acc = acc.add(&Interval::point(b[i][j]).mul(&Interval::point(x[j])));
                }
            }
            let ratio = acc.div(&Interval::point(x[i]));
            lo = lo.min(ratio.lo);
            hi = hi.max(ratio.hi);
            y[i] = acc.mid() + x[i];
        }
        let cur = Interval::new(lo.max(best.lo), hi.min(best.hi));
        best = cur;
        if best.width() <= tol || step + 1 == MAX_POWER_STEPS {
            break;
        }
        let norm = y.iter().cloned().fold(0.0, f64::max);
        x = y.iter().map(|v| (v / norm).max(f64::MIN_POSITIVE)).collect();
    }
    best
}

/// Certified enclosure of the Perron root of the trimmed automaton's
/// adjacency matrix: the maximum over strongly connected components.
pub fn dominant_eigenvalue(a: &Automaton, tol: f64) -> Interval {
    let t = a.trim();
    let adj = t.adjacency();
    let mut rho = Interval::ZERO;
    for comp in scc(&adj) {
        let block: Vec<Vec<f64>> =
            comp.iter().map(|&i| comp.iter().map(|&j| adj[i][j].to_f64().unwrap()).collect()).collect();
        if comp.len() == 1 && block[0][0] == 0.0 {
            continue;
        }
        rho = rho.max(&block_radius(&block, tol));
    }
    rho
}
