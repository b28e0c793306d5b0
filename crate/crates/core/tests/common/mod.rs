//! Independent oracle: builds boundary matrices from raw facet lists and
//! reads off Betti numbers (exact rational rank) and, for small primes, the
//! number of torsion summands divisible by each prime (ranks mod p).

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use cmkit_core::{FgAbelianGroup, OrientedComplex};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub const PRIMES: [u64; 4] = [2, 3, 5, 7];

/// All faces of the facets, grouped by dimension, each sorted.
pub fn closure(facets: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        let k = f.len();
        for mask in 1u32..(1 << k) {
            all.insert((0..k).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect());
        }
    }
    let top = all.iter().map(Vec::len).max().unwrap_or(0);
    let mut by_dim = vec![Vec::new(); top];
    for s in all {
        by_dim[s.len() - 1].push(s);
    }
    by_dim
}

/// Boundary matrix from `upper` (columns) to `lower` (rows).
pub fn boundary(lower: &[Vec<usize>], upper: &[Vec<usize>]) -> Vec<Vec<i64>> {
    let index: BTreeMap<&Vec<usize>, usize> = lower.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = vec![vec![0i64; upper.len()]; lower.len()];
    for (j, s) in upper.iter().enumerate() {
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            m[index[&face]][j] += sign;
        }
    }
    m
}

pub fn rank_mod_p(m: &[Vec<i64>], p: u64) -> usize {
    let p = p as i64;
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = mod_inverse(a[r][c], p);
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c] * inv % p;
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let e = a.extended_gcd(&p);
    e.x.rem_euclid(p)
}

/// Exact rank over Q by fraction-free (Bareiss) elimination.
pub fn rank_q(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Bareiss determinant of a square integer matrix.
pub fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, piv);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Betti number and, per small prime, the count of torsion summands
/// whose order the prime divides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub betti: usize,
    pub p_torsion: Vec<usize>,
}

impl Invariants {
    pub fn of_group(g: &FgAbelianGroup) -> Self {
        Self {
            betti: g.free_rank,
            p_torsion: PRIMES
                .iter()
                .map(|&p| g.torsion.iter().filter(|d| (*d % p).is_zero()).count())
                .collect(),
        }
    }

    pub fn zero() -> Self {
        Self {
            betti: 0,
            p_torsion: vec![0; PRIMES.len()],
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

/// Invariants of the homology of a chain complex given by its boundary
/// matrices `d[k]: C_k -> C_{k-1}` and ranks `n[k]`, degrees `0..n.len()`.
fn chain_invariants(n: &[usize], d: &[Vec<Vec<i64>>]) -> Vec<Invariants> {
    let top = n.len();
    // d[k] for k in 0..=top, with d[0] and d[top] possibly empty.
    let rq: Vec<usize> = (0..=top).map(|k| rank_q(&d[k])).collect();
    let rp: Vec<Vec<usize>> = PRIMES
        .iter()
        .map(|&p| (0..=top).map(|k| rank_mod_p(&d[k], p)).collect())
        .collect();
    let mut out = Vec::with_capacity(top);
    let mut prev_t = vec![0usize; PRIMES.len()];
    for k in 0..top {
        let betti = n[k] - rq[k] - rq[k + 1];
        let mut t = Vec::with_capacity(PRIMES.len());
        for (pi, _) in PRIMES.iter().enumerate() {
            let dim_p = n[k] - rp[pi][k] - rp[pi][k + 1];
            t.push(dim_p - betti - prev_t[pi]);
        }
        prev_t = t.clone();
        out.push(Invariants { betti, p_torsion: t });
    }
    out
}

/// Homology invariants in degrees `0..=dim`.
pub fn homology(facets: &[Vec<usize>]) -> Vec<Invariants> {
    let cl = closure(facets);
    let n: Vec<usize> = cl.iter().map(Vec::len).collect();
    let mut d: Vec<Vec<Vec<i64>>> = vec![Vec::new(); n.len() + 1];
    for k in 1..n.len() {
        d[k] = boundary(&cl[k - 1], &cl[k]);
    }
    chain_invariants(&n, &d)
}

/// Reduced homology invariants in degrees `-1..=dim`, as a vector whose
/// first entry is degree -1.
pub fn reduced_homology(facets: &[Vec<usize>]) -> Vec<Invariants> {
    let cl = closure(facets);
    let mut n: Vec<usize> = vec![1];
    n.extend(cl.iter().map(Vec::len));
    let mut d: Vec<Vec<Vec<i64>>> = vec![Vec::new(); n.len() + 1];
    if n.len() > 1 {
        d[1] = vec![vec![1i64; n[1]]];
    }
    for k in 2..n.len() {
        d[k] = boundary(&cl[k - 2], &cl[k - 1]);
    }
    chain_invariants(&n, &d)
}

/// Facets of the link of `sigma`: simplices disjoint from it whose union
/// with it is a face, maximal among those.
pub fn link_facets(facets: &[Vec<usize>], sigma: &[usize]) -> Vec<Vec<usize>> {
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in facets {
        if sigma.iter().all(|v| f.contains(v)) {
            let rest: Vec<usize> = f.iter().copied().filter(|v| !sigma.contains(v)).collect();
            if !rest.is_empty() {
                out.insert(rest);
            }
        }
    }
    out.into_iter().collect()
}

/// Maximal simplices of a library complex as raw vertex lists.
pub fn facets_of(x: &OrientedComplex) -> Vec<Vec<usize>> {
    x.maximal_simplices()
        .iter()
        .map(|&m| x.simplex(m).vertices().to_vec())
        .collect()
}

pub fn max_abs(m: &[Vec<BigInt>]) -> BigInt {
    m.iter().flatten().map(|v| v.abs()).max().unwrap_or_default()
}
