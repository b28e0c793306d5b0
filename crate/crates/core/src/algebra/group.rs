//! Finitely generated abelian groups and homomorphisms between presented groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::matrix::IntMatrix;
use super::snf::{invariant_factors, SmithForm};

/// Isomorphism type `Z^r + Z/d_1 + ... + Z/d_t` with `d_1 | d_2 | ... | d_t`
/// and every `d_i >= 2`.
///
/// The representation is canonical, so two groups are isomorphic exactly
/// when they compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FgAbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Builds the canonical form from arbitrary nonzero invariant factors,
    /// which must already form a divisibility chain (as produced by SNF).
    /// Units are dropped.
    pub fn from_invariants(free_rank: usize, factors: impl IntoIterator<Item = BigInt>) -> Self {
        let torsion: Vec<BigInt> = factors.into_iter().map(|d| d.abs()).filter(|d| !d.is_one()).collect();
        debug_assert!(torsion.iter().all(|d| !d.is_zero()));
        debug_assert!(torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        Self { free_rank, torsion }
    }

    /// Cokernel of `relations`, viewed as a map `Z^cols -> Z^rows`.
    pub fn cokernel(relations: &IntMatrix) -> Self {
        let f = invariant_factors(relations);
        let free = relations.rows() - f.len();
        Self::from_invariants(free, f)
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Number of generators in the canonical presentation.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for FgAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A finitely presented abelian group `Z^generators / im(relations)`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub relations: IntMatrix,
}

impl Presentation {
    pub fn new(relations: IntMatrix) -> Self {
        Self { relations }
    }

    /// `Z^g / (d_1 Z + ...)` with one relation per nonzero order; an order of
    /// zero marks a free generator.
    pub fn diagonal(orders: &[BigInt]) -> Self {
        let g = orders.len();
        let cols: Vec<Vec<BigInt>> = orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut c = vec![BigInt::zero(); g];
                c[i] = d.clone();
                c
            })
            .collect();
        Self {
            relations: IntMatrix::from_columns(g, &cols),
        }
    }

    pub fn generators(&self) -> usize {
        self.relations.rows()
    }

    pub fn group(&self) -> FgAbelianGroup {
        FgAbelianGroup::cokernel(&self.relations)
    }
}

/// Sublattice of `Z^n` spanned by the columns of a matrix.
#[derive(Clone, Debug)]
pub struct Lattice {
    ambient: usize,
    snf: SmithForm,
}

impl Lattice {
    pub fn span(generators: &IntMatrix) -> Self {
        Self {
            ambient: generators.rows(),
            snf: SmithForm::compute(generators),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.snf.rank()
    }

    /// Integer solution `x` of `G x = v` if `v` lies in the lattice.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let w = self.snf.u.mul_vec(v);
        let r = self.snf.rank();
        let mut y = vec![BigInt::zero(); self.snf.v.rows()];
        for (i, wi) in w.iter().enumerate() {
            if i < r {
                let d = self.snf.d.get(i, i);
                let (q, rem) = wi.div_rem(d);
                if !rem.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !wi.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&y))
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.solve(v).is_some()
    }

    pub fn contains_all(&self, m: &IntMatrix) -> bool {
        (0..m.cols()).all(|j| self.contains(&m.column(j)))
    }
}

/// Whether the columns of `a` and `b` span the same sublattice.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    assert_eq!(a.rows(), b.rows());
    Lattice::span(a).contains_all(b) && Lattice::span(b).contains_all(a)
}

/// Basis of the integer kernel of `a` (as columns).
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let s = SmithForm::compute(a);
    s.v.select_cols(s.rank()..a.cols())
}

/// A homomorphism between presented groups, given on generators.
///
/// `matrix` has one column per source generator, expressed in target
/// generators. Well-definedness (relations map into relations) is checked
/// by [`PresentedHom::is_well_defined`].
#[derive(Clone, Debug)]
pub struct PresentedHom {
    pub source: Presentation,
    pub target: Presentation,
    pub matrix: IntMatrix,
}

impl PresentedHom {
    pub fn new(source: Presentation, target: Presentation, matrix: IntMatrix) -> Self {
        assert_eq!(matrix.cols(), source.generators());
        assert_eq!(matrix.rows(), target.generators());
        Self { source, target, matrix }
    }

    pub fn is_well_defined(&self) -> bool {
        let image = self.matrix.mul(&self.source.relations);
        Lattice::span(&self.target.relations).contains_all(&image)
    }

    pub fn is_surjective(&self) -> bool {
        let g = self.target.generators();
        let combined = IntMatrix::hstack(&[&self.matrix, &self.target.relations]);
        let f = invariant_factors(&combined);
        f.len() == g && f.iter().all(One::is_one)
    }

    pub fn is_injective(&self) -> bool {
        // x is in the kernel iff M x + R' y = 0 for some y; the kernel is
        // trivial iff every such x lies in the source relation lattice.
        let combined = IntMatrix::hstack(&[&self.matrix, &self.target.relations]);
        let k = kernel_basis(&combined);
        let xs = k.select_rows(0..self.source.generators());
        Lattice::span(&self.source.relations).contains_all(&xs)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective() && self.is_injective()
    }

    /// Image of the homomorphism as an abstract group.
    pub fn image(&self) -> FgAbelianGroup {
        // im = (M Z^g + R') / R'
        let combined = IntMatrix::hstack(&[&self.matrix, &self.target.relations]);
        let span = Lattice::span(&combined);
        let total_rank = span.rank();
        let rel_rank = Lattice::span(&self.target.relations).rank();
        // Express the relation lattice inside a basis of the combined span.
        let basis = span_basis(&combined);
        let coords: Vec<Vec<BigInt>> = (0..self.target.relations.cols())
            .map(|j| {
                Lattice::span(&basis)
                    .solve(&self.target.relations.column(j))
                    .expect("relations lie in the combined span")
            })
            .collect();
        let rel = IntMatrix::from_columns(basis.cols(), &coords);
        let g = FgAbelianGroup::cokernel(&rel);
        debug_assert_eq!(g.free_rank, total_rank - rel_rank);
        g
    }
}

/// A basis (as columns) of the lattice spanned by the columns of `a`.
pub fn span_basis(a: &IntMatrix) -> IntMatrix {
    // A = U^{-1} D V^{-1}; the first r columns of U^{-1} D form a basis.
    let s = SmithForm::compute(a);
    let r = s.rank();
    let mut b = s.u_inv.select_cols(0..r);
    for j in 0..r {
        let d = s.d.get(j, j).clone();
        for i in 0..b.rows() {
            let v = b.get(i, j) * &d;
            b.set(i, j, v);
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(FgAbelianGroup::trivial().to_string(), "0");
        assert_eq!(FgAbelianGroup::free(1).to_string(), "Z");
        let g = FgAbelianGroup::from_invariants(2, [BigInt::from(1), 2.into(), 6.into()]);
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/6");
    }

    #[test]
    fn cokernel_of_diag() {
        let g = FgAbelianGroup::cokernel(&IntMatrix::from_rows(&[[2, 0], [0, 3], [0, 0]]));
        assert_eq!(g, FgAbelianGroup::from_invariants(1, [BigInt::from(6)]));
    }

    #[test]
    fn hom_checks() {
        let z = Presentation::diagonal(&[BigInt::zero()]);
        let z2 = Presentation::diagonal(&[BigInt::from(2)]);
        // Z --x2--> Z: injective, not surjective.
        let h = PresentedHom::new(z.clone(), z.clone(), IntMatrix::from_rows(&[[2]]));
        assert!(h.is_injective() && !h.is_surjective());
        // Z -> Z/2 reduction: surjective, not injective.
        let h = PresentedHom::new(z.clone(), z2.clone(), IntMatrix::from_rows(&[[1]]));
        assert!(h.is_surjective() && !h.is_injective());
        assert_eq!(h.image(), FgAbelianGroup::from_invariants(0, [BigInt::from(2)]));
        // Z/2 -> Z/2 identity.
        let h = PresentedHom::new(z2.clone(), z2.clone(), IntMatrix::from_rows(&[[3]]));
        assert!(h.is_well_defined() && h.is_isomorphism());
        // Z/2 -> Z is not well defined unless zero.
        let h = PresentedHom::new(z2, z, IntMatrix::from_rows(&[[1]]));
        assert!(!h.is_well_defined());
    }

    #[test]
    fn lattice_membership() {
        let g = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        let l = Lattice::span(&g);
        assert!(l.contains(&[4.into(), 9.into()]));
        assert!(!l.contains(&[1.into(), 0.into()]));
        assert!(same_lattice(&g, &IntMatrix::from_rows(&[[2, 2], [0, 3]])));
    }
}
