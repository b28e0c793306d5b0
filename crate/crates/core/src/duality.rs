//! Fundamental class, cap product with it, and the duality reports.
//!
//! For an `n`-dimensional locally CM complex `X`, capping an `l`-cochain
//! `ψ` with `[X] = Σ σ*` gives the `(n-l)`-chain
//!
//! ```text
//! [X] ∩ ψ = Σ_{σ ∈ X_n} ψ(back l-face of σ) · h^n(σ > front (n-l)-face)(σ*)
//! ```
//!
//! with coefficients in the local cohomology cosheaf `h^n`. The sign
//! relating `[X] ∩ δφ` to `∂([X] ∩ φ)` is discovered per `(n, l)` and used
//! to assemble a chain map from the reversed cochain complex.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    induced_on_homology, ChainMap, FgAbelianGroup, GradedGroups, InducedMap, IntMatrix, IntegerChainComplex,
};
use crate::coefficients::{cosheaf_chain_complex, sheaf_cochain_complex, CoefficientComplex, CoefficientError};
use crate::complex::{Label, OrientedComplex, Selection};
use crate::local::{cm_verdict, local_cohomology_cosheaf, local_homology_sheaf, LocalHomology, Offense};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("the complex is empty")]
    Empty,
    #[error("complex is not pure: maximal simplex {0} has dimension below the top")]
    NotPure(String),
    #[error("complex is not locally CM ({} offending local groups)", .0.len())]
    NotLocallyCm(Vec<Offense>),
    #[error("cochain degree {l} out of range 0..={n}")]
    DegreeOutOfRange { l: usize, n: usize },
    #[error("cochain has length {got}, expected {expected}")]
    CochainLength { got: usize, expected: usize },
    #[error("vertex {0} is not in the complex")]
    UnknownVertex(String),
    #[error("subcomplex is not full: {0} spans a simplex of the complex but is missing")]
    NotFull(String),
    #[error(transparent)]
    Coefficients(#[from] CoefficientError),
}

fn top_dimension(x: &OrientedComplex) -> Result<usize, DualityError> {
    x.dim().ok_or(DualityError::Empty)
}

fn require_pure(x: &OrientedComplex) -> Result<usize, DualityError> {
    let n = top_dimension(x)?;
    if let Some(&m) = x.maximal_simplices().iter().find(|&&m| x.simplex(m).dim() != n) {
        return Err(DualityError::NotPure(x.display_simplex(x.simplex(m))));
    }
    Ok(n)
}

fn require_locally_cm(x: &OrientedComplex) -> Result<usize, DualityError> {
    let v = cm_verdict(x).map_err(|_| DualityError::Empty)?;
    if !v.locally_cm {
        return Err(DualityError::NotLocallyCm(v.offending_simplices));
    }
    Ok(v.dimension)
}

/// The chain `[X] = Σ σ*` in `C_n(X; h^n)`.
#[derive(Clone, Debug, Serialize)]
pub struct FundamentalClass {
    pub degree: usize,
    /// Coordinates in `C_n(X; h^n)`, one per `n`-simplex.
    #[serde(serialize_with = "crate::algebra::serialize_integers")]
    pub chain: Vec<BigInt>,
    pub is_cycle: bool,
    /// A simplex where `∂[X]` is nonzero, if any.
    pub boundary_witness: Option<String>,
    pub homology: FgAbelianGroup,
    /// Coordinates of the class of `[X]` in `H_n(X; h^n)` (when a cycle).
    #[serde(serialize_with = "crate::algebra::serialize_optional_integers")]
    pub class: Option<Vec<BigInt>>,
    /// `H_n(X; h^n) = Z` and `[X]` is a generator.
    pub generates: bool,
}

/// Builds `[X]` and checks that it is a cycle. Only the top two degrees of
/// the cosheaf chain complex are used, so this also runs on complexes that
/// are not locally CM.
pub fn fundamental_class(x: &OrientedComplex) -> Result<FundamentalClass, DualityError> {
    let n = require_pure(x)?;
    let h = local_cohomology_cosheaf(x, n);
    fundamental_class_with(x, &h)
}

pub fn fundamental_class_with(x: &OrientedComplex, h: &LocalHomology) -> Result<FundamentalClass, DualityError> {
    let n = require_pure(x)?;
    let sel = Selection::from_fn(x, |id| x.simplex(id).dim() + 1 >= n);
    let c = cosheaf_chain_complex(x, &h.system, &sel)?;
    let chains = c.chains.as_ref().expect("cosheaf complex");
    let chain: Vec<BigInt> = c.terms[n]
        .iter()
        .map(|t| h.class_of_simplex(t.simplex, t.simplex)[t.generator].clone())
        .collect();
    let boundary = chains.boundary(n).mul_vec(&chain);
    let witness = boundary
        .iter()
        .position(|v| !v.is_zero())
        .map(|i| x.display_simplex(x.simplex(c.terms[n - 1][i].simplex)));
    let is_cycle = witness.is_none();
    let data = chains.homology_data(n);
    let class = if is_cycle {
        Some(data.class_of(&chain).expect("cycle"))
    } else {
        None
    };
    let generates = data.group == FgAbelianGroup::free(1)
        && class
            .as_ref()
            .is_some_and(|c| c.len() == 1 && (c[0] == BigInt::from(1) || c[0] == BigInt::from(-1)));
    Ok(FundamentalClass {
        degree: n,
        chain,
        is_cycle,
        boundary_witness: witness,
        homology: data.group.clone(),
        class,
        generates,
    })
}

/// Matrix of `ψ ↦ [X] ∩ ψ` from `l`-cochains supported on `source` (flat
/// ids of `l`-simplices) into the degree-`(n-l)` terms of `target`.
/// Contributions whose front face is not in `target` are dropped and counted.
pub fn cap_matrix(
    x: &OrientedComplex,
    h: &LocalHomology,
    n: usize,
    l: usize,
    source: &[usize],
    target: &CoefficientComplex,
) -> (IntMatrix, usize) {
    let rows = target.rank(n - l);
    let mut m = IntMatrix::zeros(rows, source.len());
    let mut dropped = 0;
    for sigma in x.ids_of_dim(n) {
        let s = x.simplex(sigma);
        let back = x.id_of(&s.back_face(l)).expect("faces are present");
        let Some(col) = source.iter().position(|&b| b == back) else {
            continue;
        };
        let front = x.id_of(&s.front_face(n - l)).expect("faces are present");
        let Some(row) = target.block(n - l, front) else {
            dropped += 1;
            continue;
        };
        let coords = h.class_of_simplex(front, sigma);
        for (g, v) in coords.iter().enumerate() {
            let cur = m.get(row + g, col) + v;
            m.set(row + g, col, cur);
        }
    }
    (m, dropped)
}

/// `[X] ∩ ψ` for an `l`-cochain `ψ` on all of `X`, as a chain in `C_{n-l}(X; h^n)`.
pub fn cap_with_fundamental(x: &OrientedComplex, l: usize, psi: &[BigInt]) -> Result<Vec<BigInt>, DualityError> {
    let n = require_locally_cm(x)?;
    if l > n {
        return Err(DualityError::DegreeOutOfRange { l, n });
    }
    if psi.len() != x.count(l) {
        return Err(DualityError::CochainLength {
            got: psi.len(),
            expected: x.count(l),
        });
    }
    let h = local_cohomology_cosheaf(x, n);
    let target = cosheaf_chain_complex(x, &h.system, &Selection::all(x))?;
    let source: Vec<usize> = x.ids_of_dim(l).collect();
    let (m, _) = cap_matrix(x, &h, n, l, &source, &target);
    Ok(m.mul_vec(psi))
}

/// How two matrices relate up to a global sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignRelation {
    Plus,
    Minus,
    BothZero,
    Unrelated,
}

impl SignRelation {
    pub fn of(a: &IntMatrix, b: &IntMatrix) -> Self {
        if a.is_zero() && b.is_zero() {
            SignRelation::BothZero
        } else if a == b {
            SignRelation::Plus
        } else if *a == b.neg() {
            SignRelation::Minus
        } else {
            SignRelation::Unrelated
        }
    }

    pub fn is_consistent(self) -> bool {
        self != SignRelation::Unrelated
    }

    fn factor(self) -> i64 {
        if self == SignRelation::Minus {
            -1
        } else {
            1
        }
    }
}

/// Sign `s` with `[X] ∩ δφ = s ∂([X] ∩ φ)` for `(l-1)`-cochains `φ`.
#[derive(Clone, Debug, Serialize)]
pub struct SignEntry {
    pub n: usize,
    pub l: usize,
    pub relation: SignRelation,
}

/// The cap product as a chain map from `D_j = C^{n-j}` (a cochain complex
/// read backwards) to a cosheaf chain complex, with per-degree verdicts.
#[derive(Clone, Debug, Serialize)]
pub struct CapChainMap {
    pub signs: Vec<SignEntry>,
    /// Sign applied to the degree-`l` cap, indexed by `l`.
    pub degree_signs: Vec<i64>,
    pub contributions_outside_target: usize,
    pub chain_map_valid: bool,
    /// `H_j(D) = H^{n-j}` against `H_j(target)`, for `j = 0..=n`.
    pub induced: Vec<InducedMap>,
    pub all_isomorphisms: bool,
}

/// Assembles the cap chain map between `source_cochains` (the cochain complex
/// whose degree-`l` basis is `source_bases[l]`) and `target`.
fn cap_chain_map(
    x: &OrientedComplex,
    h: &LocalHomology,
    n: usize,
    source: &IntegerChainComplex,
    source_bases: &[Vec<usize>],
    target: &CoefficientComplex,
) -> CapChainMap {
    let target_chains = target.chains.as_ref().expect("cosheaf complex");
    let empty = Vec::new();
    let mut caps = Vec::with_capacity(n + 1);
    let mut dropped = 0;
    for l in 0..=n {
        let (m, d) = cap_matrix(x, h, n, l, source_bases.get(l).unwrap_or(&empty), target);
        dropped += d;
        caps.push(m);
    }
    // Source differential C^{l-1} -> C^l is D_{n-l+1} -> D_{n-l}.
    let mut signs = Vec::new();
    for l in 1..=n {
        let delta = source.boundary(n - l + 1);
        let lhs = caps[l].mul(&delta);
        let rhs = target_chains.boundary(n - l + 1).mul(&caps[l - 1]);
        signs.push(SignEntry {
            n,
            l,
            relation: SignRelation::of(&lhs, &rhs),
        });
    }
    let mut degree_signs = vec![1i64; n + 1];
    for l in (0..n).rev() {
        degree_signs[l] = degree_signs[l + 1] * signs[l].relation.factor();
    }
    let maps: Vec<IntMatrix> = (0..=n)
        .map(|j| {
            let l = n - j;
            if degree_signs[l] == 1 {
                caps[l].clone()
            } else {
                caps[l].neg()
            }
        })
        .collect();
    let f = ChainMap { maps };
    let chain_map_valid = f.validate(source, target_chains).is_ok();
    let induced: Vec<InducedMap> = if chain_map_valid {
        (0..=n)
            .map(|j| induced_on_homology(&f, source, target_chains, j).expect("validated chain map"))
            .collect()
    } else {
        Vec::new()
    };
    let all_isomorphisms = chain_map_valid && induced.iter().all(|m| m.is_isomorphism);
    CapChainMap {
        signs,
        degree_signs,
        contributions_outside_target: dropped,
        chain_map_valid,
        induced,
        all_isomorphisms,
    }
}

/// One degree of a duality statement.
#[derive(Clone, Debug, Serialize)]
pub struct FormEntry {
    pub cochain_degree: usize,
    pub chain_degree: usize,
    pub left: FgAbelianGroup,
    pub right: FgAbelianGroup,
    pub isomorphic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Form {
    pub statement: String,
    pub entries: Vec<FormEntry>,
    pub holds: bool,
}

impl Form {
    fn compare(statement: &str, n: usize, left: &GradedGroups, right: &GradedGroups) -> Self {
        let entries: Vec<FormEntry> = (0..=n)
            .map(|k| {
                let l = left.get(k as isize);
                let r = right.get((n - k) as isize);
                FormEntry {
                    cochain_degree: k,
                    chain_degree: n - k,
                    isomorphic: l == r,
                    left: l,
                    right: r,
                }
            })
            .collect();
        Self {
            statement: statement.to_string(),
            holds: entries.iter().all(|e| e.isomorphic),
            entries,
        }
    }
}

/// All four duality isomorphisms plus the chain-level cap check.
#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub dimension: usize,
    pub forms: Vec<Form>,
    pub cap: CapChainMap,
    pub fundamental_class: FundamentalClass,
    /// On a finite complex compact supports and locally finite chains
    /// coincide with the ordinary ones.
    pub finite_complex: bool,
    pub all_hold: bool,
}

pub const FORM_STATEMENTS: [&str; 4] = [
    "H^k_c(X;h_n) = H_{n-k}(X;Z)",
    "H^k(X;h_n) = H^lf_{n-k}(X;Z)",
    "H^k_c(X;Z) = H_{n-k}(X;h^n)",
    "H^k(X;Z) = H^lf_{n-k}(X;h^n)",
];

pub fn duality_report(x: &OrientedComplex) -> Result<DualityReport, DualityError> {
    let n = require_locally_cm(x)?;
    let sheaf = local_homology_sheaf(x, n);
    let cosheaf = local_cohomology_cosheaf(x, n);
    let all = Selection::all(x);
    let sheaf_cx = sheaf_cochain_complex(x, &sheaf.system, &all)?;
    let cosheaf_cx = cosheaf_chain_complex(x, &cosheaf.system, &all)?;
    let twisted_cohomology = sheaf_cx.groups();
    let twisted_homology = cosheaf_cx.groups();
    let homology = x.homology();
    let cohomology = x.cohomology();
    let forms = vec![
        Form::compare(FORM_STATEMENTS[0], n, &twisted_cohomology, &homology),
        Form::compare(FORM_STATEMENTS[1], n, &twisted_cohomology, &homology),
        Form::compare(FORM_STATEMENTS[2], n, &cohomology, &twisted_homology),
        Form::compare(FORM_STATEMENTS[3], n, &cohomology, &twisted_homology),
    ];
    let source = x.chain_complex().dual().reversed(n);
    let bases: Vec<Vec<usize>> = (0..=n).map(|l| x.ids_of_dim(l).collect()).collect();
    let cap = cap_chain_map(x, &cosheaf, n, &source, &bases, &cosheaf_cx);
    let fundamental_class = fundamental_class_with(x, &cosheaf)?;
    let all_hold = forms.iter().all(|f| f.holds) && cap.all_isomorphisms;
    Ok(DualityReport {
        dimension: n,
        forms,
        cap,
        fundamental_class,
        finite_complex: true,
        all_hold,
    })
}

/// Per-`(n, l)` signs of the cap chain-map law on a locally CM complex.
pub fn chain_map_signs(x: &OrientedComplex) -> Result<Vec<SignEntry>, DualityError> {
    let n = require_locally_cm(x)?;
    let cosheaf = local_cohomology_cosheaf(x, n);
    let target = cosheaf_chain_complex(x, &cosheaf.system, &Selection::all(x))?;
    let source = x.chain_complex().dual().reversed(n);
    let bases: Vec<Vec<usize>> = (0..=n).map(|l| x.ids_of_dim(l).collect()).collect();
    Ok(cap_chain_map(x, &cosheaf, n, &source, &bases, &target).signs)
}

/// Vertex-order convention for relative duality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Convention {
    /// Vertices of `L` come before those of the vertex complement.
    #[serde(rename = "L-first")]
    LFirst,
    /// Vertices of the vertex complement come before those of `L`.
    #[serde(rename = "Lvc-first")]
    LvcFirst,
}

impl Convention {
    pub fn other(self) -> Self {
        match self {
            Convention::LFirst => Convention::LvcFirst,
            Convention::LvcFirst => Convention::LFirst,
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "L-first" => Ok(Convention::LFirst),
            "Lvc-first" => Ok(Convention::LvcFirst),
            other => Err(format!("unknown convention {other:?}; expected L-first or Lvc-first")),
        }
    }
}

/// Relative duality under one vertex-order convention.
#[derive(Clone, Debug, Serialize)]
pub struct ConventionReport {
    pub convention: Convention,
    pub vertex_order: Vec<String>,
    /// `H^l(L; h_n|L)` against `H_{n-l}(X, L^vc; Z)`.
    pub restricted_sheaf_form: Form,
    /// `H^l(X, L; Z)` against `H_{n-l}(L^vc; h^n|L^vc)`.
    pub relative_cochain_form: Form,
    /// Chain-level cap for the second form.
    pub cap: CapChainMap,
    pub groups_hold: bool,
    pub chain_level_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelativeDualityReport {
    pub dimension: usize,
    pub subcomplex_vertices: Vec<String>,
    pub complement_vertices: Vec<String>,
    pub selected: Convention,
    /// Selected convention first, then the other one.
    pub conventions: Vec<ConventionReport>,
    /// Conventions under which both forms hold and the cap is a
    /// chain-level isomorphism.
    pub working_conventions: Vec<Convention>,
}

/// Relative duality for the full subcomplex on `subcomplex_vertices`.
pub fn relative_duality_report(
    x: &OrientedComplex,
    subcomplex_vertices: &[Label],
    convention: Convention,
) -> Result<RelativeDualityReport, DualityError> {
    let n = require_locally_cm(x)?;
    let mut in_l = vec![false; x.vertex_count()];
    for l in subcomplex_vertices {
        let v = x
            .vertex_index(l)
            .ok_or_else(|| DualityError::UnknownVertex(l.to_string()))?;
        in_l[v] = true;
    }
    let l_vertices: Vec<usize> = (0..x.vertex_count()).filter(|&v| in_l[v]).collect();
    let lvc_vertices: Vec<usize> = (0..x.vertex_count()).filter(|&v| !in_l[v]).collect();
    let conventions = [convention, convention.other()]
        .iter()
        .map(|&c| convention_report(x, n, &l_vertices, &lvc_vertices, c))
        .collect::<Result<Vec<_>, _>>()?;
    let working_conventions = conventions
        .iter()
        .filter(|r| r.groups_hold && r.chain_level_holds)
        .map(|r| r.convention)
        .collect();
    let names = |vs: &[usize]| vs.iter().map(|&v| x.label(v).to_string()).collect();
    Ok(RelativeDualityReport {
        dimension: n,
        subcomplex_vertices: names(&l_vertices),
        complement_vertices: names(&lvc_vertices),
        selected: convention,
        conventions,
        working_conventions,
    })
}

/// Same check with `L` given as a subcomplex; it must be full.
pub fn relative_duality_for_subcomplex(
    x: &OrientedComplex,
    l: &OrientedComplex,
    convention: Convention,
) -> Result<RelativeDualityReport, DualityError> {
    let labels: Vec<Label> = l.used_vertices().iter().map(|&v| l.label(v).clone()).collect();
    let idx: Vec<usize> = labels
        .iter()
        .map(|lab| {
            x.vertex_index(lab)
                .ok_or_else(|| DualityError::UnknownVertex(lab.to_string()))
        })
        .collect::<Result<_, _>>()?;
    let full = x.full_subcomplex(&idx);
    if full.len() != l.len() {
        let missing = full
            .simplices()
            .iter()
            .find(|s| {
                let labs = full.simplex_labels(s);
                let v: Option<Vec<usize>> = labs.iter().map(|lab| l.vertex_index(lab)).collect();
                v.and_then(|v| l.id_of_vertices(&v)).is_none()
            })
            .map(|s| full.display_simplex(s))
            .unwrap_or_default();
        return Err(DualityError::NotFull(missing));
    }
    relative_duality_report(x, &labels, convention)
}

fn convention_report(
    x: &OrientedComplex,
    n: usize,
    l_vertices: &[usize],
    lvc_vertices: &[usize],
    convention: Convention,
) -> Result<ConventionReport, DualityError> {
    let order: Vec<usize> = match convention {
        Convention::LFirst => l_vertices.iter().chain(lvc_vertices).copied().collect(),
        Convention::LvcFirst => lvc_vertices.iter().chain(l_vertices).copied().collect(),
    };
    let y = x.reoriented(&order).expect("a permutation of the vertices");
    let (lo, hi) = match convention {
        Convention::LFirst => (0..l_vertices.len(), l_vertices.len()..order.len()),
        Convention::LvcFirst => (lvc_vertices.len()..order.len(), 0..lvc_vertices.len()),
    };
    let l_idx: Vec<usize> = lo.collect();
    let lvc_idx: Vec<usize> = hi.collect();
    let l_sel = Selection::spanned_by(&y, &l_idx);
    let lvc_sel = Selection::spanned_by(&y, &lvc_idx);

    let sheaf = local_homology_sheaf(&y, n);
    let cosheaf = local_cohomology_cosheaf(&y, n);

    let left_a = sheaf_cochain_complex(&y, &sheaf.system, &l_sel)?.groups();
    let right_a = GradedGroups::from_nonnegative(y.chain_complex_on(&lvc_sel.complement()).0.homology());
    let (rel, rel_basis) = y.chain_complex_on(&l_sel.complement());
    let left_b = GradedGroups::from_nonnegative(rel.dual().cohomology());
    let target = cosheaf_chain_complex(&y, &cosheaf.system, &lvc_sel)?;
    let right_b = target.groups();

    let restricted_sheaf_form = Form::compare("H^l(L;h_n|L) = H_{n-l}(X,L^vc;Z)", n, &left_a, &right_a);
    let relative_cochain_form = Form::compare("H^l(X,L;Z) = H_{n-l}(L^vc;h^n|L^vc)", n, &left_b, &right_b);

    let source = rel.dual().reversed(n);
    let cap = cap_chain_map(&y, &cosheaf, n, &source, &rel_basis, &target);
    let groups_hold = restricted_sheaf_form.holds && relative_cochain_form.holds;
    Ok(ConventionReport {
        convention,
        vertex_order: order.iter().map(|&v| x.label(v).to_string()).collect(),
        restricted_sheaf_form,
        relative_cochain_form,
        chain_level_holds: cap.all_isomorphisms,
        cap,
        groups_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn z(r: usize) -> FgAbelianGroup {
        FgAbelianGroup::free(r)
    }

    #[test]
    fn s2_fundamental_class() {
        let f = fundamental_class(&fixtures::s2()).unwrap();
        assert_eq!(f.chain.len(), 4);
        assert!(f.is_cycle && f.generates);
    }

    #[test]
    fn simplex_and_two_triangles() {
        let f = fundamental_class(&fixtures::triangle()).unwrap();
        assert_eq!(f.chain.len(), 1);
        assert!(f.is_cycle);
        let f = fundamental_class(&fixtures::two_triangles()).unwrap();
        assert!(f.is_cycle);
        assert_eq!(f.homology, z(2));
        let c = f.class.unwrap();
        assert!(c.iter().all(|v| v.magnitude() == &num_bigint::BigUint::from(1u8)));
    }

    #[test]
    fn impure_complex_rejected() {
        assert!(matches!(
            fundamental_class(&fixtures::edge_and_triangle()),
            Err(DualityError::NotPure(_))
        ));
    }

    #[test]
    fn cap_of_constant_zero_cochain_is_fundamental_class() {
        let x = fixtures::s2();
        let psi = vec![BigInt::from(1); 4];
        let chain = cap_with_fundamental(&x, 0, &psi).unwrap();
        let f = fundamental_class(&x).unwrap();
        assert_eq!(chain, f.chain);
    }

    #[test]
    fn cap_on_top_simplex_lands_on_first_vertex() {
        let x = fixtures::s2();
        let alpha = x.id_of_vertices(&[1, 2, 3]).unwrap();
        let mut psi = vec![BigInt::zero(); 4];
        psi[alpha - x.ids_of_dim(2).start] = BigInt::from(1);
        let chain = cap_with_fundamental(&x, 2, &psi).unwrap();
        let nonzero: Vec<usize> = (0..chain.len()).filter(|&i| !chain[i].is_zero()).collect();
        assert_eq!(nonzero, vec![1]);
    }

    #[test]
    fn s2_report() {
        let r = duality_report(&fixtures::s2()).unwrap();
        assert!(r.all_hold);
        assert_eq!(r.forms[2].entries[2].left, z(1));
        assert_eq!(r.forms[2].entries[2].right, z(1));
    }

    #[test]
    fn rp6_report_has_torsion() {
        let r = duality_report(&fixtures::rp6()).unwrap();
        assert!(r.all_hold);
        let e = &r.forms[2].entries[2];
        assert_eq!(e.left.to_string(), "Z/2");
        assert_eq!(e.right.to_string(), "Z/2");
    }

    #[test]
    fn k4_report() {
        let r = duality_report(&fixtures::k4()).unwrap();
        assert!(r.all_hold);
        assert_eq!(r.forms[2].entries[1].left, z(3));
    }

    #[test]
    fn non_cm_rejected() {
        assert!(matches!(
            duality_report(&fixtures::edge_and_triangle()),
            Err(DualityError::NotLocallyCm(_))
        ));
    }

    #[test]
    fn relative_s2_one_vertex() {
        let x = fixtures::s2();
        let r = relative_duality_report(&x, &[Label::Int(0)], Convention::LvcFirst).unwrap();
        let c = &r.conventions[0];
        assert!(c.groups_hold);
        assert_eq!(c.restricted_sheaf_form.entries[0].left, z(1));
        assert_eq!(c.restricted_sheaf_form.entries[0].right, z(1));
    }

    #[test]
    fn relative_with_whole_complex() {
        let x = fixtures::s2();
        let all: Vec<Label> = x.labels().to_vec();
        let r = relative_duality_report(&x, &all, Convention::LFirst).unwrap();
        assert!(r.conventions.iter().all(|c| c.groups_hold));
    }
}
