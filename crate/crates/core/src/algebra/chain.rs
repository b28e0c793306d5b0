//! Integer chain complexes, their homology with explicit generators, and
//! maps induced by chain maps.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::group::{FgAbelianGroup, Presentation, PresentedHom};
use super::matrix::IntMatrix;
use super::snf::{sparse_invariant_factors, SmithForm};
use super::AlgebraError;

/// A bounded chain complex `C_top -> ... -> C_1 -> C_0` of free abelian groups.
///
/// `boundaries[k]` is `d_k : C_k -> C_{k-1}` (so `boundaries[0]` has zero
/// rows). Every complex starts at degree 0; shifted complexes are handled
/// by the caller.
#[derive(Clone, Debug)]
pub struct IntegerChainComplex {
    boundaries: Vec<IntMatrix>,
}

impl IntegerChainComplex {
    /// Validates shapes and `d_{k} d_{k+1} = 0`.
    pub fn new(boundaries: Vec<IntMatrix>) -> Result<Self, AlgebraError> {
        for (k, d) in boundaries.iter().enumerate() {
            let expected_rows = if k == 0 { 0 } else { boundaries[k - 1].cols() };
            if d.rows() != expected_rows {
                return Err(AlgebraError::ShapeMismatch {
                    degree: k,
                    detail: format!("d_{k} has {} rows, expected {expected_rows}", d.rows()),
                });
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul(&boundaries[k]).is_zero() {
                return Err(AlgebraError::NotAComplex { degree: k });
            }
        }
        Ok(Self { boundaries })
    }

    /// Complex with the given ranks and all differentials zero.
    pub fn zero(ranks: &[usize]) -> Self {
        let boundaries = ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| IntMatrix::zeros(if k == 0 { 0 } else { ranks[k - 1] }, r))
            .collect();
        Self { boundaries }
    }

    /// Number of degrees (top degree + 1).
    pub fn len(&self) -> usize {
        self.boundaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundaries.is_empty()
    }

    pub fn rank(&self, k: usize) -> usize {
        self.boundaries.get(k).map_or(0, IntMatrix::cols)
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..self.len()).map(|k| self.rank(k)).collect()
    }

    /// `d_k`, or the appropriate zero matrix outside the stored range.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        match self.boundaries.get(k) {
            Some(d) => d.clone(),
            None => IntMatrix::zeros(self.rank(k.wrapping_sub(1)), self.rank(k)),
        }
    }

    pub fn boundaries(&self) -> &[IntMatrix] {
        &self.boundaries
    }

    /// The dual cochain complex `Hom(C, Z)`.
    pub fn dual(&self) -> CochainComplex {
        let n = self.len();
        let coboundaries = (0..n).map(|k| self.boundary(k + 1).transpose()).collect();
        CochainComplex { coboundaries }
    }

    pub fn homology_data(&self, k: usize) -> HomologyData {
        let outgoing = self.boundary(k);
        let incoming = self.boundary(k + 1);
        HomologyData::compute(&incoming, &outgoing)
    }

    /// Homology groups only, via sparse elimination; use
    /// [`IntegerChainComplex::homology_data`] when generators are needed.
    pub fn homology(&self) -> Vec<FgAbelianGroup> {
        groups_from_differentials(&self.ranks(), |k| self.boundary(k))
    }
}

/// Groups of a complex with ranks `ranks[k]` whose outgoing map from
/// degree `k` is `differential(k)`; the map from degree 0 is zero.
fn groups_from_differentials(ranks: &[usize], differential: impl Fn(usize) -> IntMatrix) -> Vec<FgAbelianGroup> {
    let factors: Vec<Vec<BigInt>> = (0..=ranks.len())
        .map(|k| {
            if k == 0 || k >= ranks.len() {
                Vec::new()
            } else {
                sparse_invariant_factors(&differential(k))
            }
        })
        .collect();
    (0..ranks.len())
        .map(|k| {
            let free = ranks[k] - factors[k].len() - factors[k + 1].len();
            FgAbelianGroup::from_invariants(free, factors[k + 1].iter().cloned())
        })
        .collect()
}

/// A bounded cochain complex `C^0 -> C^1 -> ... -> C^top`.
///
/// `coboundaries[k]` is `delta_k : C^k -> C^{k+1}`; the last one maps into
/// the zero group.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    coboundaries: Vec<IntMatrix>,
}

impl CochainComplex {
    pub fn new(coboundaries: Vec<IntMatrix>) -> Result<Self, AlgebraError> {
        for k in 1..coboundaries.len() {
            if coboundaries[k].cols() != coboundaries[k - 1].rows() {
                return Err(AlgebraError::ShapeMismatch {
                    degree: k,
                    detail: format!(
                        "delta_{k} has {} columns, expected {}",
                        coboundaries[k].cols(),
                        coboundaries[k - 1].rows()
                    ),
                });
            }
        }
        if let Some(last) = coboundaries.last() {
            if last.rows() != 0 {
                return Err(AlgebraError::ShapeMismatch {
                    degree: coboundaries.len() - 1,
                    detail: "top coboundary must map into the zero group".into(),
                });
            }
        }
        for k in 1..coboundaries.len() {
            if !coboundaries[k].mul(&coboundaries[k - 1]).is_zero() {
                return Err(AlgebraError::NotAComplex { degree: k });
            }
        }
        Ok(Self { coboundaries })
    }

    pub fn len(&self) -> usize {
        self.coboundaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coboundaries.is_empty()
    }

    pub fn rank(&self, k: usize) -> usize {
        self.coboundaries.get(k).map_or(0, IntMatrix::cols)
    }

    pub fn coboundary(&self, k: usize) -> IntMatrix {
        match self.coboundaries.get(k) {
            Some(d) => d.clone(),
            None => IntMatrix::zeros(self.rank(k + 1), self.rank(k)),
        }
    }

    pub fn cohomology_data(&self, k: usize) -> HomologyData {
        let outgoing = self.coboundary(k);
        let incoming = if k == 0 {
            IntMatrix::zeros(self.rank(0), 0)
        } else {
            self.coboundary(k - 1)
        };
        HomologyData::compute(&incoming, &outgoing)
    }

    /// Cohomology groups only, via sparse elimination.
    pub fn cohomology(&self) -> Vec<FgAbelianGroup> {
        let ranks: Vec<usize> = (0..self.len()).map(|k| self.rank(k)).collect();
        let top = ranks.len().saturating_sub(1);
        let reversed: Vec<usize> = ranks.iter().rev().copied().collect();
        let mut groups = groups_from_differentials(&reversed, |j| self.coboundary(top - j));
        groups.reverse();
        groups
    }

    /// Re-index as a chain complex with `D_j = C^{top - j}` where
    /// `top = len - 1`; the differential `D_j -> D_{j-1}` is
    /// `delta_{top-j}`.
    pub fn reversed(&self, top: usize) -> IntegerChainComplex {
        assert!(top + 1 >= self.len());
        let boundaries = (0..=top)
            .map(|j| {
                if j == 0 {
                    IntMatrix::zeros(0, self.rank(top))
                } else {
                    self.coboundary(top - j)
                }
            })
            .collect();
        IntegerChainComplex { boundaries }
    }
}

/// Homology of `C_{k+1} --incoming--> C_k --outgoing--> C_{k-1}` with
/// explicit cycle representatives and a coordinate map.
///
/// Generators come in canonical order: torsion generators (orders
/// `d_1 | ... | d_t`) followed by free generators.
#[derive(Clone, Debug)]
pub struct HomologyData {
    pub group: FgAbelianGroup,
    /// Cycle representatives, one column per generator.
    pub generators: IntMatrix,
    /// Order of each generator; zero marks a free generator.
    pub orders: Vec<BigInt>,
    outgoing: IntMatrix,
    /// Rows of `V^{-1}` past the rank of `outgoing`: cycle -> kernel coords.
    kernel_coords: IntMatrix,
    /// `U'` restricted to the non-unit rows: kernel coords -> class coords.
    class_coords: IntMatrix,
}

impl HomologyData {
    pub fn compute(incoming: &IntMatrix, outgoing: &IntMatrix) -> Self {
        let n = outgoing.cols();
        assert_eq!(incoming.rows(), n, "incoming/outgoing shapes disagree");
        let s = SmithForm::compute(outgoing);
        let r = s.rank();
        let kernel = s.v.select_cols(r..n);
        let kernel_coords = s.v_inv.select_rows(r..n);
        let reduced_incoming = kernel_coords.mul(incoming);
        let q = SmithForm::compute(&reduced_incoming);
        let z = n - r;
        let factors = q.diagonal();
        let units = factors.iter().take_while(|d| d.is_one()).count();
        let mut orders: Vec<BigInt> = factors[units..].to_vec();
        orders.extend(std::iter::repeat_n(BigInt::zero(), z - factors.len()));
        let generators = kernel.mul(&q.u_inv.select_cols(units..z));
        let class_coords = q.u.select_rows(units..z);
        let group = FgAbelianGroup::from_invariants(z - factors.len(), factors[units..].to_vec());
        HomologyData {
            group,
            generators,
            orders,
            outgoing: outgoing.clone(),
            kernel_coords,
            class_coords,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.orders.len()
    }

    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        self.generators.column(i)
    }

    pub fn presentation(&self) -> Presentation {
        Presentation::diagonal(&self.orders)
    }

    pub fn is_cycle(&self, chain: &[BigInt]) -> bool {
        self.outgoing.mul_vec(chain).iter().all(Zero::is_zero)
    }

    /// Coordinates of the class of `chain` on the canonical generators,
    /// torsion coordinates reduced into `[0, d)`.
    pub fn class_of(&self, chain: &[BigInt]) -> Result<Vec<BigInt>, AlgebraError> {
        if !self.is_cycle(chain) {
            return Err(AlgebraError::NotACycle);
        }
        let y = self.kernel_coords.mul_vec(chain);
        let mut c = self.class_coords.mul_vec(&y);
        for (x, d) in c.iter_mut().zip(&self.orders) {
            if !d.is_zero() {
                *x = x.mod_floor(d);
            }
        }
        Ok(c)
    }

    /// Whether the chain is a boundary (its class is zero).
    pub fn is_boundary(&self, chain: &[BigInt]) -> Result<bool, AlgebraError> {
        Ok(self.class_of(chain)?.iter().all(Zero::is_zero))
    }
}

/// A family of matrices `f_k : C_k -> C'_k`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub maps: Vec<IntMatrix>,
}

impl ChainMap {
    pub fn identity(c: &IntegerChainComplex) -> Self {
        Self {
            maps: (0..c.len()).map(|k| IntMatrix::identity(c.rank(k))).collect(),
        }
    }

    pub fn component(&self, k: usize, source_rank: usize, target_rank: usize) -> IntMatrix {
        self.maps
            .get(k)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(target_rank, source_rank))
    }

    /// Checks shapes and `d' f_k = f_{k-1} d` in every degree.
    pub fn validate(&self, source: &IntegerChainComplex, target: &IntegerChainComplex) -> Result<(), AlgebraError> {
        let top = source.len().max(target.len()).max(self.maps.len());
        for k in 0..top {
            let f = self.component(k, source.rank(k), target.rank(k));
            if f.rows() != target.rank(k) || f.cols() != source.rank(k) {
                return Err(AlgebraError::ShapeMismatch {
                    degree: k,
                    detail: format!(
                        "f_{k} is {}x{}, expected {}x{}",
                        f.rows(),
                        f.cols(),
                        target.rank(k),
                        source.rank(k)
                    ),
                });
            }
            if k == 0 {
                continue;
            }
            let g = self.component(k - 1, source.rank(k - 1), target.rank(k - 1));
            let lhs = target.boundary(k).mul(&f);
            let rhs = g.mul(&source.boundary(k));
            if lhs != rhs {
                return Err(AlgebraError::NotAChainMap { degree: k });
            }
        }
        Ok(())
    }

    /// Composite `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> ChainMap {
        let n = self.maps.len().min(other.maps.len());
        ChainMap {
            maps: (0..n).map(|k| other.maps[k].mul(&self.maps[k])).collect(),
        }
    }
}

/// A homomorphism on homology in one degree.
#[derive(Clone, Debug, Serialize)]
pub struct InducedMap {
    pub degree: usize,
    pub source: FgAbelianGroup,
    pub target: FgAbelianGroup,
    /// Column `j` is the image of source generator `j` in target coordinates.
    pub matrix: IntMatrix,
    pub is_isomorphism: bool,
    pub is_injective: bool,
    pub is_surjective: bool,
}

impl InducedMap {
    /// Two induced maps agree if their matrices agree modulo target torsion.
    pub fn same_as(&self, other: &InducedMap, target: &HomologyData) -> bool {
        if self.matrix.rows() != other.matrix.rows() || self.matrix.cols() != other.matrix.cols() {
            return false;
        }
        (0..self.matrix.rows()).all(|i| {
            let d = &target.orders[i];
            (0..self.matrix.cols()).all(|j| {
                let diff = self.matrix.get(i, j) - other.matrix.get(i, j);
                if d.is_zero() {
                    diff.is_zero()
                } else {
                    diff.is_multiple_of(d)
                }
            })
        })
    }
}

/// Map induced on `H_k` by a chain map, with an exact isomorphism verdict.
pub fn induced_on_homology(
    f: &ChainMap,
    source: &IntegerChainComplex,
    target: &IntegerChainComplex,
    k: usize,
) -> Result<InducedMap, AlgebraError> {
    f.validate(source, target)?;
    let hs = source.homology_data(k);
    let ht = target.homology_data(k);
    Ok(induced_between(f, &hs, &ht, source, target, k))
}

/// Same as [`induced_on_homology`] with precomputed homology data and no
/// chain-map validation.
pub fn induced_between(
    f: &ChainMap,
    hs: &HomologyData,
    ht: &HomologyData,
    source: &IntegerChainComplex,
    target: &IntegerChainComplex,
    k: usize,
) -> InducedMap {
    let fk = f.component(k, source.rank(k), target.rank(k));
    let cols: Vec<Vec<BigInt>> = (0..hs.generator_count())
        .map(|j| {
            let image = fk.mul_vec(&hs.generator(j));
            ht.class_of(&image).expect("chain maps send cycles to cycles")
        })
        .collect();
    let matrix = IntMatrix::from_columns(ht.generator_count(), &cols);
    hom_verdict(k, hs, ht, matrix)
}

fn hom_verdict(degree: usize, hs: &HomologyData, ht: &HomologyData, matrix: IntMatrix) -> InducedMap {
    let hom = PresentedHom::new(hs.presentation(), ht.presentation(), matrix.clone());
    let is_injective = hom.is_injective();
    let is_surjective = hom.is_surjective();
    InducedMap {
        degree,
        source: hs.group.clone(),
        target: ht.group.clone(),
        matrix,
        is_isomorphism: is_injective && is_surjective,
        is_injective,
        is_surjective,
    }
}

/// Groups indexed by integer degree, zero outside the stored range.
///
/// Equality compares the groups in every degree, so trailing or leading
/// zero groups do not matter.
#[derive(Clone, Debug, Default)]
pub struct GradedGroups {
    pub min_degree: isize,
    pub groups: Vec<FgAbelianGroup>,
}

impl GradedGroups {
    pub fn new(min_degree: isize, groups: Vec<FgAbelianGroup>) -> Self {
        Self { min_degree, groups }
    }

    pub fn from_nonnegative(groups: Vec<FgAbelianGroup>) -> Self {
        Self::new(0, groups)
    }

    pub fn get(&self, degree: isize) -> FgAbelianGroup {
        let i = degree - self.min_degree;
        if i < 0 {
            return FgAbelianGroup::trivial();
        }
        self.groups.get(i as usize).cloned().unwrap_or_default()
    }

    /// Degrees with a nontrivial group.
    pub fn support(&self) -> Vec<isize> {
        self.groups
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_trivial())
            .map(|(i, _)| i as isize + self.min_degree)
            .collect()
    }

    /// True if every nontrivial group sits in degree `n` (vacuous if all vanish).
    pub fn concentrated_in(&self, n: isize) -> bool {
        self.support().iter().all(|&d| d == n)
    }

    pub fn is_acyclic(&self) -> bool {
        self.support().is_empty()
    }

    pub fn max_degree(&self) -> isize {
        self.min_degree + self.groups.len() as isize - 1
    }
}

impl PartialEq for GradedGroups {
    fn eq(&self, other: &Self) -> bool {
        let lo = self.min_degree.min(other.min_degree);
        let hi = self.max_degree().max(other.max_degree());
        (lo..=hi).all(|d| self.get(d) == other.get(d))
    }
}

impl Eq for GradedGroups {}

impl Serialize for GradedGroups {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<isize, String> = self
            .groups
            .iter()
            .enumerate()
            .map(|(i, g)| (i as isize + self.min_degree, g.to_string()))
            .collect();
        m.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Simplicial chain complex of the boundary of a triangle.
    fn three_cycle() -> IntegerChainComplex {
        // vertices 0,1,2; edges 01, 02, 12
        let d1 = IntMatrix::from_rows(&[[-1, -1, 0], [1, 0, -1], [0, 1, 1]]);
        IntegerChainComplex::new(vec![IntMatrix::zeros(0, 3), d1]).unwrap()
    }

    #[test]
    fn three_cycle_homology() {
        let h = three_cycle().homology();
        assert_eq!(h, vec![FgAbelianGroup::free(1), FgAbelianGroup::free(1)]);
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = IntMatrix::from_rows(&[[1]]);
        let d2 = IntMatrix::from_rows(&[[1]]);
        let err = IntegerChainComplex::new(vec![IntMatrix::zeros(0, 1), d1, d2]).unwrap_err();
        assert!(matches!(err, AlgebraError::NotAComplex { degree: 2 }));
    }

    #[test]
    fn torsion_class_coordinates() {
        // Z --2--> Z : H_0 = Z/2
        let c = IntegerChainComplex::new(vec![IntMatrix::zeros(0, 1), IntMatrix::from_rows(&[[2]])]).unwrap();
        let h = c.homology_data(0);
        assert_eq!(h.group.to_string(), "Z/2");
        assert_eq!(h.class_of(&[BigInt::from(3)]).unwrap(), vec![BigInt::one()]);
        assert!(h.is_boundary(&[BigInt::from(4)]).unwrap());
    }

    #[test]
    fn identity_and_zero_induced() {
        let c = three_cycle();
        let id = ChainMap::identity(&c);
        let m = induced_on_homology(&id, &c, &c, 1).unwrap();
        assert!(m.is_isomorphism);
        let zero = ChainMap {
            maps: vec![IntMatrix::zeros(3, 3), IntMatrix::zeros(3, 3)],
        };
        let m = induced_on_homology(&zero, &c, &c, 1).unwrap();
        assert!(!m.is_isomorphism);
    }

    /// Rotation `i ↦ i+1` of the triangle boundary.
    fn rotation() -> ChainMap {
        ChainMap {
            maps: vec![
                IntMatrix::from_rows(&[[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
                IntMatrix::from_rows(&[[0, -1, 0], [0, 0, -1], [1, 0, 0]]),
            ],
        }
    }

    #[test]
    fn induced_maps_are_functorial() {
        let c = three_cycle();
        let r = rotation();
        r.validate(&c, &c).unwrap();
        for k in 0..2 {
            let once = induced_on_homology(&r, &c, &c, k).unwrap();
            let twice = induced_on_homology(&r.then(&r), &c, &c, k).unwrap();
            let product = InducedMap {
                matrix: once.matrix.mul(&once.matrix),
                ..once.clone()
            };
            assert!(twice.same_as(&product, &c.homology_data(k)));
            let thrice = induced_on_homology(&r.then(&r).then(&r), &c, &c, k).unwrap();
            assert!(thrice.same_as(
                &induced_on_homology(&ChainMap::identity(&c), &c, &c, k).unwrap(),
                &c.homology_data(k)
            ));
        }

        // Z --2--> Z with multiplication by 3 and by 5; H_0 = Z/2.
        let t = IntegerChainComplex::new(vec![IntMatrix::zeros(0, 1), IntMatrix::from_rows(&[[2]])]).unwrap();
        let scale = |a: i64| ChainMap {
            maps: vec![IntMatrix::from_rows(&[[a]]), IntMatrix::from_rows(&[[a]])],
        };
        let (f, g) = (scale(3), scale(5));
        let composite = induced_on_homology(&f.then(&g), &t, &t, 0).unwrap();
        let (hf, hg) = (
            induced_on_homology(&f, &t, &t, 0).unwrap(),
            induced_on_homology(&g, &t, &t, 0).unwrap(),
        );
        let product = InducedMap {
            matrix: hg.matrix.mul(&hf.matrix),
            ..hf.clone()
        };
        assert!(composite.same_as(&product, &t.homology_data(0)));
        assert!(composite.same_as(
            &induced_on_homology(&ChainMap::identity(&t), &t, &t, 0).unwrap(),
            &t.homology_data(0)
        ));
    }

    #[test]
    fn dual_gives_cohomology() {
        let c = three_cycle();
        let h = c.dual().cohomology();
        assert_eq!(h, vec![FgAbelianGroup::free(1), FgAbelianGroup::free(1)]);
    }
}
