//! Local homology sheaves, local cohomology cosheaves and the
//! Cohen–Macaulay verdicts.
//!
//! The local chain complex at `σ` is spanned by the simplices `τ >= σ`,
//! with the simplicial boundary followed by the quotient that kills faces
//! not containing `σ`. For `σ < τ` the quotient `C^σ -> C^τ` is a chain
//! map; it induces the sheaf restriction on homology, and its dual
//! (extension of cochains by zero) induces the cosheaf corestriction.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{FgAbelianGroup, GradedGroups, HomologyData, IntMatrix, IntegerChainComplex};
use crate::complex::{OrientedComplex, Selection, Simplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    #[error("simplex {0} is not in the complex")]
    NotInComplex(String),
    #[error("the complex is empty")]
    EmptyComplex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemKind {
    /// Maps go up: `F(σ) -> F(τ)` for `σ < τ`.
    Sheaf,
    /// Maps go down: `G(τ) -> G(σ)` for `σ < τ`.
    Cosheaf,
}

/// A sheaf or cosheaf of finitely generated abelian groups on the face
/// poset of a complex, stored on covering pairs.
///
/// Values are indexed by flat simplex id. Each value has a chosen
/// generating set (its canonical generators); the map on a covering pair
/// `(face, coface)` is a matrix in those generators: `rank(coface) x
/// rank(face)` for sheaves and `rank(face) x rank(coface)` for cosheaves.
#[derive(Debug)]
pub struct LocalSystem {
    pub kind: SystemKind,
    pub values: Vec<FgAbelianGroup>,
    pub maps: BTreeMap<(usize, usize), IntMatrix>,
    cache: Mutex<HashMap<(usize, usize), IntMatrix>>,
}

impl Clone for LocalSystem {
    fn clone(&self) -> Self {
        Self::new(self.kind, self.values.clone(), self.maps.clone())
    }
}

impl LocalSystem {
    pub fn new(kind: SystemKind, values: Vec<FgAbelianGroup>, maps: BTreeMap<(usize, usize), IntMatrix>) -> Self {
        Self {
            kind,
            values,
            maps,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// The constant system `Z` with identity maps.
    pub fn constant(x: &OrientedComplex, kind: SystemKind) -> Self {
        let values = vec![FgAbelianGroup::free(1); x.len()];
        let mut maps = BTreeMap::new();
        for id in 0..x.len() {
            for &t in x.cofacets(id) {
                maps.insert((id, t), IntMatrix::identity(1));
            }
        }
        Self::new(kind, values, maps)
    }

    pub fn rank(&self, id: usize) -> usize {
        self.values[id].generator_count()
    }

    /// Order of each canonical generator of a value (0 for free generators).
    pub fn orders(&self, id: usize) -> Vec<BigInt> {
        let g = &self.values[id];
        g.torsion
            .iter()
            .cloned()
            .chain(std::iter::repeat_n(BigInt::from(0), g.free_rank))
            .collect()
    }

    /// Map on a covering pair, or a zero matrix if none was stored.
    pub fn map(&self, face: usize, coface: usize) -> IntMatrix {
        match self.maps.get(&(face, coface)) {
            Some(m) => m.clone(),
            None => self.zero_map(face, coface),
        }
    }

    fn zero_map(&self, lower: usize, upper: usize) -> IntMatrix {
        match self.kind {
            SystemKind::Sheaf => IntMatrix::zeros(self.rank(upper), self.rank(lower)),
            SystemKind::Cosheaf => IntMatrix::zeros(self.rank(lower), self.rank(upper)),
        }
    }

    /// Structure map for any comparable pair `lower <= upper`, composed
    /// along the saturated chain that adds the missing vertices in
    /// increasing order. Results are cached.
    pub fn map_between(&self, x: &OrientedComplex, lower: usize, upper: usize) -> IntMatrix {
        if lower == upper {
            return IntMatrix::identity(self.rank(lower));
        }
        if let Some(m) = self.cache.lock().unwrap().get(&(lower, upper)) {
            return m.clone();
        }
        let lo = x.simplex(lower);
        let hi = x.simplex(upper);
        debug_assert!(lo.is_face_of(hi));
        let mut current = lower;
        let mut vertices = lo.vertices().to_vec();
        let mut result = IntMatrix::identity(self.rank(lower));
        for &v in hi.vertices() {
            if lo.contains_vertex(v) {
                continue;
            }
            vertices.push(v);
            vertices.sort_unstable();
            let next = x.id_of_vertices(&vertices).expect("faces of a simplex are present");
            let step = self.map(current, next);
            result = match self.kind {
                SystemKind::Sheaf => step.mul(&result),
                SystemKind::Cosheaf => result.mul(&step),
            };
            current = next;
        }
        self.cache.lock().unwrap().insert((lower, upper), result.clone());
        result
    }

    /// Simplices (flat ids) whose value has torsion.
    pub fn torsion_values(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| !self.values[i].is_free()).collect()
    }
}

/// Simplices of dimension `k` containing `id`, as flat ids in order.
pub fn star_basis(x: &OrientedComplex, id: usize, k: usize) -> Vec<usize> {
    let s = x.simplex(id);
    x.ids_of_dim(k).filter(|&t| s.is_face_of(x.simplex(t))).collect()
}

fn resolve(x: &OrientedComplex, sigma: &Simplex) -> Result<usize, LocalError> {
    x.id_of(sigma)
        .ok_or_else(|| LocalError::NotInComplex(format!("{:?}", sigma.vertices())))
}

/// Local chain complex at `σ` and its basis (flat ids per degree).
pub fn local_chain_complex(
    x: &OrientedComplex,
    sigma: &Simplex,
) -> Result<(IntegerChainComplex, Vec<Vec<usize>>), LocalError> {
    let id = resolve(x, sigma)?;
    Ok(local_chain_complex_at(x, id))
}

pub fn local_chain_complex_at(x: &OrientedComplex, id: usize) -> (IntegerChainComplex, Vec<Vec<usize>>) {
    x.chain_complex_on(&Selection::open_star(x, id))
}

/// All local homology groups at `σ`.
pub fn local_homology(x: &OrientedComplex, sigma: &Simplex) -> Result<GradedGroups, LocalError> {
    let (c, _) = local_chain_complex(x, sigma)?;
    Ok(GradedGroups::from_nonnegative(c.homology()))
}

/// A local (co)homology system in one degree, with per-simplex homology data
/// for converting local (co)chains to coordinates.
#[derive(Clone, Debug)]
pub struct LocalHomology {
    pub degree: usize,
    pub system: LocalSystem,
    pub data: Vec<HomologyData>,
    /// Flat ids of the degree-`n` simplices containing each simplex.
    pub bases: Vec<Vec<usize>>,
}

impl LocalHomology {
    /// Coordinates in the value at `id` of the class of the local
    /// (co)chain that is 1 on the `n`-simplex `tau` and 0 elsewhere.
    pub fn class_of_simplex(&self, id: usize, tau: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::from(0); self.bases[id].len()];
        let pos = self.bases[id]
            .iter()
            .position(|&t| t == tau)
            .expect("tau contains the simplex");
        v[pos] = BigInt::from(1);
        self.data[id]
            .class_of(&v)
            .expect("top-degree local cochains and maximal chains are cycles")
    }

    /// Simplices whose value has torsion; such systems are not accepted as
    /// coefficients.
    pub fn unsupported_for_coefficients(&self) -> Vec<usize> {
        self.system.torsion_values()
    }
}

fn per_simplex<T: Send>(x: &OrientedComplex, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    (0..x.len()).into_par_iter().map(&f).collect()
}

/// Coordinates of `v` (given on `from`) restricted or extended to `to`.
fn transport(v: &[BigInt], from: &[usize], to: &[usize]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); to.len()];
    for (i, id) in to.iter().enumerate() {
        if let Ok(j) = from.binary_search(id) {
            out[i] = v[j].clone();
        }
    }
    out
}

/// The local homology sheaf `h_n`.
pub fn local_homology_sheaf(x: &OrientedComplex, n: usize) -> LocalHomology {
    let computed: Vec<(HomologyData, Vec<usize>)> = per_simplex(x, |id| {
        let (c, mut basis) = local_chain_complex_at(x, id);
        let data = c.homology_data(n);
        let b = if n < basis.len() {
            std::mem::take(&mut basis[n])
        } else {
            Vec::new()
        };
        (data, b)
    });
    let (data, bases): (Vec<_>, Vec<_>) = computed.into_iter().unzip();
    let pairs: Vec<(usize, usize)> = (0..x.len())
        .flat_map(|s| x.cofacets(s).iter().map(move |&t| (s, t)))
        .collect();
    let maps: BTreeMap<(usize, usize), IntMatrix> = pairs
        .par_iter()
        .map(|&(s, t)| {
            let cols: Vec<Vec<BigInt>> = (0..data[s].generator_count())
                .map(|j| {
                    let image = transport(&data[s].generator(j), &bases[s], &bases[t]);
                    data[t].class_of(&image).expect("quotient maps send cycles to cycles")
                })
                .collect();
            ((s, t), IntMatrix::from_columns(data[t].generator_count(), &cols))
        })
        .collect();
    let values = data.iter().map(|d| d.group.clone()).collect();
    LocalHomology {
        degree: n,
        system: LocalSystem::new(SystemKind::Sheaf, values, maps),
        data,
        bases,
    }
}

/// The local cohomology cosheaf `h^n`.
pub fn local_cohomology_cosheaf(x: &OrientedComplex, n: usize) -> LocalHomology {
    let computed: Vec<(HomologyData, Vec<usize>)> = per_simplex(x, |id| {
        let (c, mut basis) = local_chain_complex_at(x, id);
        let data = c.dual().cohomology_data(n);
        let b = if n < basis.len() {
            std::mem::take(&mut basis[n])
        } else {
            Vec::new()
        };
        (data, b)
    });
    let (data, bases): (Vec<_>, Vec<_>) = computed.into_iter().unzip();
    let pairs: Vec<(usize, usize)> = (0..x.len())
        .flat_map(|s| x.cofacets(s).iter().map(move |&t| (s, t)))
        .collect();
    let maps: BTreeMap<(usize, usize), IntMatrix> = pairs
        .par_iter()
        .map(|&(s, t)| {
            let cols: Vec<Vec<BigInt>> = (0..data[t].generator_count())
                .map(|j| {
                    let image = transport(&data[t].generator(j), &bases[t], &bases[s]);
                    data[s]
                        .class_of(&image)
                        .expect("extension by zero sends cocycles to cocycles")
                })
                .collect();
            ((s, t), IntMatrix::from_columns(data[s].generator_count(), &cols))
        })
        .collect();
    let values = data.iter().map(|d| d.group.clone()).collect();
    LocalHomology {
        degree: n,
        system: LocalSystem::new(SystemKind::Cosheaf, values, maps),
        data,
        bases,
    }
}

/// A nonzero local homology group in a degree other than the CM degree.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Offense {
    pub simplex: String,
    pub degree: usize,
    pub group: FgAbelianGroup,
}

/// Cohen–Macaulay verdict.
#[derive(Clone, Debug, Serialize)]
pub struct CmVerdict {
    pub dimension: usize,
    pub locally_cm: bool,
    pub offending_simplices: Vec<Offense>,
    pub reduced_homology: GradedGroups,
    /// Locally CM and reduced homology concentrated in the top degree.
    pub homology_cm: bool,
    /// Simplices where the top local homology vanishes (permitted).
    pub vanishing_locus: Vec<String>,
}

/// CM verdict in the complex's own dimension.
pub fn cm_verdict(x: &OrientedComplex) -> Result<CmVerdict, LocalError> {
    let n = x.dim().ok_or(LocalError::EmptyComplex)?;
    Ok(cm_verdict_in_degree(x, n))
}

/// CM verdict against a prescribed degree `n`: every local homology group
/// outside degree `n` must vanish. Vanishing in degree `n` is allowed.
pub fn cm_verdict_in_degree(x: &OrientedComplex, n: usize) -> CmVerdict {
    let local: Vec<Vec<FgAbelianGroup>> = per_simplex(x, |id| local_chain_complex_at(x, id).0.homology());
    let mut offending = Vec::new();
    let mut vanishing_locus = Vec::new();
    for (id, groups) in local.iter().enumerate() {
        let name = x.display_simplex(x.simplex(id));
        for (k, g) in groups.iter().enumerate() {
            if k != n && !g.is_trivial() {
                offending.push(Offense {
                    simplex: name.clone(),
                    degree: k,
                    group: g.clone(),
                });
            }
        }
        if groups.get(n).is_none_or(FgAbelianGroup::is_trivial) {
            vanishing_locus.push(name);
        }
    }
    let reduced_homology = x.reduced_homology();
    let locally_cm = offending.is_empty();
    CmVerdict {
        dimension: n,
        locally_cm,
        homology_cm: locally_cm && reduced_homology.concentrated_in(n as isize),
        offending_simplices: offending,
        reduced_homology,
        vanishing_locus,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sx(v: &[usize]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn local_complex_ranks() {
        let (c, _) = local_chain_complex(&fixtures::s2(), &sx(&[0])).unwrap();
        assert_eq!(c.ranks(), vec![1, 3, 3]);
        let (c, _) = local_chain_complex(&fixtures::triangle(), &sx(&[0, 1])).unwrap();
        assert_eq!(c.ranks(), vec![0, 1, 1]);
        let (c, _) = local_chain_complex(&fixtures::triangle(), &sx(&[0, 1, 2])).unwrap();
        assert_eq!(c.ranks(), vec![0, 0, 1]);
    }

    #[test]
    fn local_homology_examples() {
        let h = local_homology(&fixtures::s2(), &sx(&[0])).unwrap();
        assert_eq!(h.support(), vec![2]);
        let h = local_homology(&fixtures::triangle(), &sx(&[0, 1])).unwrap();
        assert!(h.is_acyclic());
        let edge = OrientedComplex::from_index_facets(2, &[&[0, 1]]);
        let h = local_homology(&edge, &sx(&[0, 1])).unwrap();
        assert_eq!(h.get(1), FgAbelianGroup::free(1));
    }

    #[test]
    fn s2_sheaf_values_and_maps() {
        let x = fixtures::s2();
        let h = local_homology_sheaf(&x, 2);
        assert!(h.system.values.iter().all(|g| *g == FgAbelianGroup::free(1)));
        for m in h.system.maps.values() {
            let e = m.get(0, 0).clone();
            assert!(e == BigInt::from(1) || e == BigInt::from(-1));
        }
        let c = local_cohomology_cosheaf(&x, 2);
        assert!(c.system.values.iter().all(|g| *g == FgAbelianGroup::free(1)));
    }

    #[test]
    fn k4_ranks() {
        let x = fixtures::k4();
        let h = local_homology_sheaf(&x, 1);
        let c = local_cohomology_cosheaf(&x, 1);
        for id in 0..x.len() {
            let expected = if x.simplex(id).dim() == 0 { 2 } else { 1 };
            assert_eq!(h.system.rank(id), expected);
            assert_eq!(c.system.rank(id), expected);
        }
    }

    #[test]
    fn triangle_sheaf_is_zero_off_the_top() {
        let x = fixtures::triangle();
        let h = local_homology_sheaf(&x, 2);
        for id in 0..x.len() {
            let expected = usize::from(x.simplex(id).dim() == 2);
            assert_eq!(h.system.rank(id), expected);
        }
        assert!(h.system.maps.values().all(IntMatrix::is_zero));
    }

    #[test]
    fn verdicts() {
        let v = cm_verdict(&fixtures::s2()).unwrap();
        assert!(v.locally_cm && v.homology_cm && v.vanishing_locus.is_empty());
        let v = cm_verdict(&fixtures::rp6()).unwrap();
        assert!(v.locally_cm && !v.homology_cm);
        let v = cm_verdict(&fixtures::edge_and_triangle()).unwrap();
        assert!(!v.locally_cm);
        assert!(v
            .offending_simplices
            .iter()
            .any(|o| o.simplex == "[2,3]" && o.degree == 1));
    }

    #[test]
    fn composite_maps_agree_with_direct_quotient() {
        let x = fixtures::s2();
        let h = local_homology_sheaf(&x, 2);
        let v = x.id_of_vertices(&[0]).unwrap();
        let t = x.id_of_vertices(&[0, 1, 2]).unwrap();
        let m = h.system.map_between(&x, v, t);
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert!(!m.is_zero());
    }
}
