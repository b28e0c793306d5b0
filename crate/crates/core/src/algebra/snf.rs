//! Smith normal form over `Z`.
//!
//! For an `m x n` integer matrix `A` this computes unimodular `U` (`m x m`)
//! and `V` (`n x n`) with `U * A * V = D`, where `D` is diagonal and its
//! nonzero diagonal entries `d_1 | d_2 | ... | d_r` are positive. The inverses
//! of both transforms are tracked alongside, since homology computations
//! need to move between coordinate systems in both directions.
//!
//! Pivoting is deterministic: at every step the entry of smallest nonzero
//! absolute value in the active submatrix is chosen, ties broken by
//! `(row, col)` order. The resulting transforms are therefore reproducible.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// The four transforms and the diagonal result of a Smith decomposition.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    rank: usize,
}

impl SmithForm {
    pub fn compute(a: &IntMatrix) -> Self {
        let mut st = Reducer::new(a.clone(), true);
        st.run();
        let Reducer {
            a: d,
            u,
            u_inv,
            v,
            v_inv,
            rank,
            ..
        } = st;
        SmithForm {
            d,
            u: u.unwrap(),
            u_inv: u_inv.unwrap(),
            v: v.unwrap(),
            v_inv: v_inv.unwrap(),
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_r`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Nonzero invariant factors of `a` without computing the transforms.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let mut st = Reducer::new(a.clone(), false);
    st.run();
    (0..st.rank).map(|i| st.a.get(i, i).clone()).collect()
}

/// Rank of `a` over `Q`.
pub fn rank(a: &IntMatrix) -> usize {
    invariant_factors(a).len()
}

/// Same result as [`invariant_factors`], for large sparse matrices.
///
/// Unit pivots are eliminated on a sparse row representation, choosing the
/// pivot of least fill at each step; the remaining block is handed to the
/// dense reduction.
pub fn sparse_invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let (m, n) = (a.rows(), a.cols());
    let mut rows: Vec<BTreeMap<usize, BigInt>> = (0..m)
        .map(|i| {
            a.row(i)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect()
        })
        .collect();
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (i, r) in rows.iter().enumerate() {
        for &j in r.keys() {
            cols[j].insert(i);
        }
    }
    let mut live_rows: BTreeSet<usize> = (0..m).filter(|&i| !rows[i].is_empty()).collect();
    let mut units = 0;
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        'search: for &i in &live_rows {
            let rw = rows[i].len() - 1;
            for (&j, x) in &rows[i] {
                if x.magnitude().is_one() {
                    let cost = rw * (cols[j].len() - 1);
                    if best.is_none_or(|(c, _, _)| cost < c) {
                        best = Some((cost, i, j));
                        if cost == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        let pivot_row = std::mem::take(&mut rows[pi]);
        live_rows.remove(&pi);
        for &j in pivot_row.keys() {
            cols[j].remove(&pi);
        }
        let sign = pivot_row[&pj].clone();
        let targets: Vec<usize> = cols[pj].iter().copied().collect();
        for r in targets {
            let q = &rows[r][&pj] * &sign;
            for (&j, x) in &pivot_row {
                let entry = rows[r].entry(j).or_insert_with(BigInt::zero);
                *entry -= &q * x;
                if entry.is_zero() {
                    rows[r].remove(&j);
                    cols[j].remove(&r);
                } else {
                    cols[j].insert(r);
                }
            }
            if rows[r].is_empty() {
                live_rows.remove(&r);
            }
        }
        units += 1;
    }
    let rest_rows: Vec<usize> = live_rows.into_iter().collect();
    let rest_cols: Vec<usize> = (0..n).filter(|&j| !cols[j].is_empty()).collect();
    let rest = IntMatrix::from_fn(rest_rows.len(), rest_cols.len(), |i, j| {
        rows[rest_rows[i]].get(&rest_cols[j]).cloned().unwrap_or_default()
    });
    let mut factors = vec![BigInt::one(); units];
    factors.extend(invariant_factors(&rest));
    factors
}

struct Reducer {
    a: IntMatrix,
    u: Option<IntMatrix>,
    u_inv: Option<IntMatrix>,
    v: Option<IntMatrix>,
    v_inv: Option<IntMatrix>,
    rank: usize,
}

impl Reducer {
    fn new(a: IntMatrix, transforms: bool) -> Self {
        let (m, n) = (a.rows(), a.cols());
        let mk = |k: usize| transforms.then(|| IntMatrix::identity(k));
        Reducer {
            a,
            u: mk(m),
            u_inv: mk(m),
            v: mk(n),
            v_inv: mk(n),
            rank: 0,
        }
    }

    // Elementary operations, mirrored on the transforms. A row operation
    // `E` on `A` updates `U <- E U` and `U^{-1} <- U^{-1} E^{-1}`; column
    // operations are symmetric.

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(i, j);
        }
    }

    /// `row[dst] += k * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, k);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.add_col_multiple(src, dst, &-k);
        }
    }

    /// `col[dst] += k * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, k);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.add_row_multiple(src, dst, &-k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(i);
        }
    }

    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in k..self.a.rows() {
            for j in k..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                let better = match &best {
                    None => true,
                    Some((_, _, b)) => ax < *b,
                };
                if better {
                    let unit = ax.is_one();
                    best = Some((i, j, ax));
                    if unit {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        let (m, n) = (self.a.rows(), self.a.cols());
        for k in 0..m.min(n) {
            loop {
                let Some((pi, pj)) = self.find_pivot(k) else {
                    return;
                };
                self.swap_rows(k, pi);
                self.swap_cols(k, pj);
                let p = self.a.get(k, k).clone();

                let mut remainder = false;
                for i in k + 1..m {
                    let x = self.a.get(i, k);
                    if x.is_zero() {
                        continue;
                    }
                    let q = x / &p;
                    if !q.is_zero() {
                        self.add_row(i, k, &-q);
                    }
                    if !self.a.get(i, k).is_zero() {
                        remainder = true;
                    }
                }
                for j in k + 1..n {
                    let x = self.a.get(k, j);
                    if x.is_zero() {
                        continue;
                    }
                    let q = x / &p;
                    if !q.is_zero() {
                        self.add_col(j, k, &-q);
                    }
                    if !self.a.get(k, j).is_zero() {
                        remainder = true;
                    }
                }
                if remainder {
                    continue;
                }

                // Row and column k are clear; enforce divisibility of the rest.
                let mut offender = None;
                'scan: for i in k + 1..m {
                    for j in k + 1..n {
                        if !self.a.get(i, j).is_multiple_of(&p) {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => self.add_row(k, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a.get(k, k).is_negative() {
                self.negate_row(k);
            }
            self.rank = k + 1;
        }
    }
}
