//! Cohomology with coefficients in a sheaf, homology with coefficients in a
//! cosheaf, section groups and Mittag-Leffler checks.
//!
//! Coefficient complexes are built over a [`Selection`] of simplices. A
//! downward-closed selection gives the (co)chains of a subcomplex; an
//! upward-closed one gives relative (co)chains. Term bases list simplices
//! in flat-id order, then the value's generators.
//!
//! On a finite complex the compactly supported (or locally finite) variants
//! coincide with the ordinary ones; the flag is accepted and recorded.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    same_lattice, CochainComplex, FgAbelianGroup, GradedGroups, HomologyData, IntMatrix, IntegerChainComplex, Lattice,
};
use crate::complex::{OrientedComplex, Selection};
use crate::local::{LocalSystem, SystemKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoefficientError {
    #[error("value at {0} has torsion; only free coefficient systems are supported")]
    TorsionValue(String),
    #[error("expected a {expected:?}, got a {got:?}")]
    WrongKind { expected: SystemKind, got: SystemKind },
    #[error("system has {got} values but the complex has {expected} simplices")]
    WrongLength { got: usize, expected: usize },
    #[error("map on {lower} < {upper} is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MapShape {
        lower: String,
        upper: String,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("map stored on {0} < {1}, which is not a covering pair")]
    NotCovering(String, String),
    #[error("selection is not a subcomplex")]
    NotSubcomplex,
    #[error("filtration is not nested at step {0}")]
    NotNested(usize),
}

/// Index of one basis element of a coefficient (co)chain group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TermIndex {
    pub simplex: usize,
    pub generator: usize,
}

/// A (co)chain complex with coefficients, with the flat term index.
#[derive(Clone, Debug)]
pub struct CoefficientComplex {
    pub kind: SystemKind,
    /// Per degree, the `(simplex, generator)` basis.
    pub terms: Vec<Vec<TermIndex>>,
    /// For sheaves, the cochain complex; for cosheaves, the chain complex.
    pub cochains: Option<CochainComplex>,
    pub chains: Option<IntegerChainComplex>,
}

impl CoefficientComplex {
    pub fn rank(&self, k: usize) -> usize {
        self.terms.get(k).map_or(0, Vec::len)
    }

    pub fn groups(&self) -> GradedGroups {
        match (&self.cochains, &self.chains) {
            (Some(c), _) => GradedGroups::from_nonnegative(c.cohomology()),
            (_, Some(c)) => GradedGroups::from_nonnegative(c.homology()),
            _ => GradedGroups::default(),
        }
    }

    pub fn data(&self, k: usize) -> HomologyData {
        match (&self.cochains, &self.chains) {
            (Some(c), _) => c.cohomology_data(k),
            (_, Some(c)) => c.homology_data(k),
            _ => unreachable!("one of the complexes is always present"),
        }
    }

    /// Offset of a simplex's block in its degree, if selected.
    pub fn block(&self, k: usize, simplex: usize) -> Option<usize> {
        self.terms.get(k)?.iter().position(|t| t.simplex == simplex)
    }
}

fn check_free(x: &OrientedComplex, f: &LocalSystem, sel: &Selection) -> Result<(), CoefficientError> {
    if f.values.len() != x.len() {
        return Err(CoefficientError::WrongLength {
            got: f.values.len(),
            expected: x.len(),
        });
    }
    for id in sel.ids() {
        if !f.values[id].is_free() {
            return Err(CoefficientError::TorsionValue(x.display_simplex(x.simplex(id))));
        }
    }
    Ok(())
}

fn terms(x: &OrientedComplex, f: &LocalSystem, sel: &Selection) -> Vec<Vec<TermIndex>> {
    x.basis(sel)
        .into_iter()
        .map(|ids| {
            ids.into_iter()
                .flat_map(|s| {
                    (0..f.rank(s)).map(move |g| TermIndex {
                        simplex: s,
                        generator: g,
                    })
                })
                .collect()
        })
        .collect()
}

fn block_offsets(terms: &[TermIndex], total: usize) -> Vec<Option<usize>> {
    let mut off = vec![None; total];
    for (i, t) in terms.iter().enumerate() {
        if t.generator == 0 {
            off[t.simplex] = Some(i);
        }
    }
    off
}

/// Sheaf cochain complex: `δ` has block `(τ, σ) = (-1)^i F(σ < τ)` when
/// `σ` is the `i`-th facet of `τ`.
pub fn sheaf_cochain_complex(
    x: &OrientedComplex,
    f: &LocalSystem,
    sel: &Selection,
) -> Result<CoefficientComplex, CoefficientError> {
    if f.kind != SystemKind::Sheaf {
        return Err(CoefficientError::WrongKind {
            expected: SystemKind::Sheaf,
            got: f.kind,
        });
    }
    check_free(x, f, sel)?;
    let terms = terms(x, f, sel);
    let degrees = terms.len();
    let coboundaries: Vec<IntMatrix> = (0..degrees)
        .into_par_iter()
        .map(|k| {
            let src = &terms[k];
            let empty = Vec::new();
            let dst = terms.get(k + 1).unwrap_or(&empty);
            let mut d = IntMatrix::zeros(dst.len(), src.len());
            let src_off = block_offsets(src, x.len());
            let dst_off = block_offsets(dst, x.len());
            for tau in x.ids_of_dim(k + 1) {
                let Some(r) = dst_off[tau] else { continue };
                for (i, sigma) in x.facets_of(tau) {
                    let Some(c) = src_off[sigma] else { continue };
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    d.add_block(r, c, &f.map(sigma, tau), sign);
                }
            }
            d
        })
        .collect();
    let cochains = CochainComplex::new(coboundaries).expect("functorial systems give cochain complexes");
    Ok(CoefficientComplex {
        kind: SystemKind::Sheaf,
        terms,
        cochains: Some(cochains),
        chains: None,
    })
}

/// Cosheaf chain complex: `∂` has block `(σ_i, σ) = (-1)^i G(σ > σ_i)`.
pub fn cosheaf_chain_complex(
    x: &OrientedComplex,
    g: &LocalSystem,
    sel: &Selection,
) -> Result<CoefficientComplex, CoefficientError> {
    if g.kind != SystemKind::Cosheaf {
        return Err(CoefficientError::WrongKind {
            expected: SystemKind::Cosheaf,
            got: g.kind,
        });
    }
    check_free(x, g, sel)?;
    let terms = terms(x, g, sel);
    let degrees = terms.len();
    let boundaries: Vec<IntMatrix> = (0..degrees)
        .into_par_iter()
        .map(|k| {
            let src = &terms[k];
            let empty = Vec::new();
            let dst = if k == 0 { &empty } else { &terms[k - 1] };
            let mut d = IntMatrix::zeros(dst.len(), src.len());
            if k == 0 {
                return d;
            }
            let src_off = block_offsets(src, x.len());
            let dst_off = block_offsets(dst, x.len());
            for sigma in x.ids_of_dim(k) {
                let Some(c) = src_off[sigma] else { continue };
                for (i, face) in x.facets_of(sigma) {
                    let Some(r) = dst_off[face] else { continue };
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    d.add_block(r, c, &g.map(face, sigma), sign);
                }
            }
            d
        })
        .collect();
    let chains = IntegerChainComplex::new(boundaries).expect("functorial systems give chain complexes");
    Ok(CoefficientComplex {
        kind: SystemKind::Cosheaf,
        terms,
        cochains: None,
        chains: Some(chains),
    })
}

/// Cohomology groups with a recorded support variant.
#[derive(Clone, Debug, Serialize)]
pub struct CoefficientGroups {
    pub groups: GradedGroups,
    /// `compact` / `all` for sheaves, `finite` / `locally-finite` for cosheaves.
    pub variant: &'static str,
    /// On a finite complex the variants coincide.
    pub variant_is_noop: bool,
}

pub fn sheaf_cohomology(
    x: &OrientedComplex,
    f: &LocalSystem,
    compact_support: bool,
) -> Result<CoefficientGroups, CoefficientError> {
    let c = sheaf_cochain_complex(x, f, &Selection::all(x))?;
    Ok(CoefficientGroups {
        groups: c.groups(),
        variant: if compact_support { "compact" } else { "all" },
        variant_is_noop: true,
    })
}

pub fn cosheaf_homology(
    x: &OrientedComplex,
    g: &LocalSystem,
    locally_finite: bool,
) -> Result<CoefficientGroups, CoefficientError> {
    let c = cosheaf_chain_complex(x, g, &Selection::all(x))?;
    Ok(CoefficientGroups {
        groups: c.groups(),
        variant: if locally_finite { "locally-finite" } else { "finite" },
        variant_is_noop: true,
    })
}

/// First functoriality failure: the two routes around a square
/// `ρ < σ_1, σ_2 < τ` disagree.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SquareWitness {
    pub bottom: String,
    pub left: String,
    pub right: String,
    pub top: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub squares_checked: usize,
    pub witness: Option<SquareWitness>,
}

/// Checks shapes on covering pairs and commutativity of every square of
/// covering relations. For torsion values, agreement is modulo the target
/// orders.
pub fn validate_system(x: &OrientedComplex, f: &LocalSystem) -> Result<ValidationReport, CoefficientError> {
    if f.values.len() != x.len() {
        return Err(CoefficientError::WrongLength {
            got: f.values.len(),
            expected: x.len(),
        });
    }
    for (&(lo, hi), m) in &f.maps {
        let name = |i: usize| x.display_simplex(x.simplex(i));
        if !x.cofacets(lo).contains(&hi) {
            return Err(CoefficientError::NotCovering(name(lo), name(hi)));
        }
        let (er, ec) = match f.kind {
            SystemKind::Sheaf => (f.rank(hi), f.rank(lo)),
            SystemKind::Cosheaf => (f.rank(lo), f.rank(hi)),
        };
        if m.rows() != er || m.cols() != ec {
            return Err(CoefficientError::MapShape {
                lower: name(lo),
                upper: name(hi),
                rows: m.rows(),
                cols: m.cols(),
                expected_rows: er,
                expected_cols: ec,
            });
        }
    }
    let mut checked = 0;
    for rho in 0..x.len() {
        let ups = x.cofacets(rho);
        for (a, &s1) in ups.iter().enumerate() {
            for &s2 in &ups[a + 1..] {
                let top: Vec<usize> = x
                    .cofacets(s1)
                    .iter()
                    .copied()
                    .filter(|t| x.cofacets(s2).contains(t))
                    .collect();
                for tau in top {
                    checked += 1;
                    let (r1, r2, target) = match f.kind {
                        SystemKind::Sheaf => (
                            f.map(s1, tau).mul(&f.map(rho, s1)),
                            f.map(s2, tau).mul(&f.map(rho, s2)),
                            tau,
                        ),
                        SystemKind::Cosheaf => (
                            f.map(rho, s1).mul(&f.map(s1, tau)),
                            f.map(rho, s2).mul(&f.map(s2, tau)),
                            rho,
                        ),
                    };
                    if !agree_mod(&r1, &r2, &f.orders(target)) {
                        let name = |i: usize| x.display_simplex(x.simplex(i));
                        return Ok(ValidationReport {
                            valid: false,
                            squares_checked: checked,
                            witness: Some(SquareWitness {
                                bottom: name(rho),
                                left: name(s1),
                                right: name(s2),
                                top: name(tau),
                            }),
                        });
                    }
                }
            }
        }
    }
    Ok(ValidationReport {
        valid: true,
        squares_checked: checked,
        witness: None,
    })
}

fn agree_mod(a: &IntMatrix, b: &IntMatrix, orders: &[BigInt]) -> bool {
    (0..a.rows()).all(|i| {
        (0..a.cols()).all(|j| {
            let d = a.get(i, j) - b.get(i, j);
            if orders[i].is_zero() {
                d.is_zero()
            } else {
                (d % &orders[i]).is_zero()
            }
        })
    })
}

/// Sections `Γ(K) = H^0(K; F|_K)` over a subcomplex, with generator cochains.
#[derive(Clone, Debug)]
pub struct SectionGroup {
    pub over: Selection,
    pub group: FgAbelianGroup,
    /// Degree-0 term basis of the cochain complex on `K`.
    pub terms: Vec<TermIndex>,
    /// Generators as 0-cochains, one column each.
    pub generators: IntMatrix,
}

impl SectionGroup {
    /// Value of a full 0-cochain on `K` restricted to a sub-selection's basis.
    fn restrict_cochain(&self, v: &[BigInt], to: &SectionGroup) -> Vec<BigInt> {
        to.terms
            .iter()
            .map(|t| {
                let i = self.terms.iter().position(|s| s == t).expect("nested subcomplexes");
                v[i].clone()
            })
            .collect()
    }

    /// Restriction `Γ(self) -> Γ(smaller)` in generator coordinates.
    pub fn restriction_to(&self, smaller: &SectionGroup) -> Result<IntMatrix, CoefficientError> {
        if !smaller.over.is_subset_of(&self.over) {
            return Err(CoefficientError::NotNested(0));
        }
        let lattice = Lattice::span(&smaller.generators);
        let cols: Vec<Vec<BigInt>> = (0..self.generators.cols())
            .map(|j| {
                let r = self.restrict_cochain(&self.generators.column(j), smaller);
                lattice.solve(&r).expect("restricted sections are sections")
            })
            .collect();
        Ok(IntMatrix::from_columns(smaller.generators.cols(), &cols))
    }
}

/// `Γ(K)` for a subcomplex `K` given as a selection.
pub fn sections(x: &OrientedComplex, f: &LocalSystem, k: &Selection) -> Result<SectionGroup, CoefficientError> {
    if !k.is_downward_closed(x) {
        return Err(CoefficientError::NotSubcomplex);
    }
    let c = sheaf_cochain_complex(x, f, k)?;
    let terms = c.terms.first().cloned().unwrap_or_default();
    let (group, generators) = if terms.is_empty() {
        (FgAbelianGroup::trivial(), IntMatrix::zeros(0, 0))
    } else {
        let data = c.data(0);
        (data.group.clone(), data.generators.clone())
    };
    Ok(SectionGroup {
        over: k.clone(),
        group,
        terms,
        generators,
    })
}

/// Stabilization data for one index of a filtration.
#[derive(Clone, Debug, Serialize)]
pub struct StabilityEntry {
    pub index: usize,
    pub sections_rank: usize,
    /// Smallest `j >= index` with the image of `Γ(K_k)` in `Γ(K_index)`
    /// constant for all `k >= j` within the range.
    pub stable_from: usize,
    pub stable_image_rank: usize,
    /// Whether the image still changed at the last step of the range.
    pub changed_at_end: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MittagLefflerReport {
    pub entries: Vec<StabilityEntry>,
    /// The last subcomplex is the whole complex.
    pub exhausts: bool,
    /// Every index stabilizes before the end of the range, or the filtration exhausts.
    pub semistable_within_range: bool,
    /// Indices whose images have not visibly stabilized within the range.
    pub unstabilized: Vec<usize>,
    pub scope: &'static str,
}

/// Mittag-Leffler check on an increasing filtration of subcomplexes.
pub fn mittag_leffler_check(
    x: &OrientedComplex,
    f: &LocalSystem,
    filtration: &[Selection],
) -> Result<MittagLefflerReport, CoefficientError> {
    for (i, w) in filtration.windows(2).enumerate() {
        if !w[0].is_subset_of(&w[1]) {
            return Err(CoefficientError::NotNested(i + 1));
        }
    }
    let groups: Vec<SectionGroup> = filtration.iter().map(|k| sections(x, f, k)).collect::<Result<_, _>>()?;
    let m = groups.len();
    let mut entries = Vec::with_capacity(m);
    for i in 0..m {
        let images: Vec<IntMatrix> = (i..m)
            .map(|k| groups[k].restriction_to(&groups[i]))
            .collect::<Result<_, _>>()?;
        let last = images.len() - 1;
        let mut stable_from = i + last;
        while stable_from > i && same_lattice(&images[stable_from - 1 - i], &images[last]) {
            stable_from -= 1;
        }
        let rank = Lattice::span(&images[last]).rank();
        entries.push(StabilityEntry {
            index: i,
            sections_rank: groups[i].group.free_rank,
            stable_from,
            stable_image_rank: rank,
            changed_at_end: last > 0 && stable_from == i + last,
        });
    }
    let exhausts = filtration.last().is_some_and(|k| k.len() == x.len());
    let unstabilized: Vec<usize> = entries.iter().filter(|e| e.changed_at_end).map(|e| e.index).collect();
    Ok(MittagLefflerReport {
        semistable_within_range: exhausts || unstabilized.is_empty(),
        exhausts,
        unstabilized,
        entries,
        scope: "verdict covers the supplied range only",
    })
}

/// `Hom(Γ(X), Z)`: on a finite complex every homomorphism is compactly
/// determined, and the dual is free of the free rank of `Γ(X)`.
pub fn compactly_determined_dual(gamma: &FgAbelianGroup) -> FgAbelianGroup {
    FgAbelianGroup::free(gamma.free_rank)
}
