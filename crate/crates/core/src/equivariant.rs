//! Finite group actions on posets and complexes, coinvariants, the cosheaf
//! resolution of the top cohomology `D`, and the dualizing bound.
//!
//! Groups are finite permutation groups given by generators and enumerated
//! by closure. Actions on oriented complexes must preserve the vertex order
//! inside every simplex, so cochains and local cohomology classes are
//! permuted without signs.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{kernel_basis, rank, FgAbelianGroup, IntMatrix, Presentation, PresentedHom};
use crate::coefficients::{cosheaf_chain_complex, CoefficientComplex, CoefficientError};
use crate::complex::{Label, OrientedComplex, Selection, Simplex};
use crate::duality::cap_matrix;
use crate::local::{cm_verdict, local_cohomology_cosheaf, LocalHomology, Offense};
use crate::poset::FinitePoset;

/// Closure stops with an error past this many group elements.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EquivariantError {
    #[error("generator {generator} has length {got}, expected {expected}")]
    WrongLength {
        generator: usize,
        got: usize,
        expected: usize,
    },
    #[error("generator {0} is not a permutation")]
    NotPermutation(usize),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("group closure exceeds {0} elements")]
    TooLarge(usize),
    #[error("generator {generator} breaks the order relation on the pair ({below}, {above})")]
    BreaksOrder {
        generator: usize,
        below: String,
        above: String,
    },
    #[error("generator {generator} sends simplex {simplex} outside the complex")]
    NotSimplicial { generator: usize, simplex: String },
    #[error("generator {generator} reverses the vertex order of simplex {simplex}")]
    ReversesOrientation { generator: usize, simplex: String },
    #[error("action matrix {0} is not invertible over Z")]
    NotInvertible(usize),
    #[error("action matrix {0} does not preserve the relations")]
    RelationsNotPreserved(usize),
    #[error("module action does not respect the group law at element {0}")]
    NotAHomomorphism(usize),
    #[error("the complex is empty")]
    Empty,
    #[error("complex is not locally CM ({} offending local groups)", .0.len())]
    NotLocallyCm(Vec<Offense>),
    #[error("reduced cohomology is not concentrated in the top degree: nonzero in degrees {0:?}")]
    NotConcentrated(Vec<isize>),
    #[error("top simplex {0} has its initial vertex outside the chosen vertex set")]
    InitialVertexOutside(String),
    #[error("vertex set is not a union of orbits: {0} is moved outside")]
    NotInvariant(String),
    #[error("representatives {0} and {1} lie in the same orbit")]
    SameOrbit(String, String),
    #[error(transparent)]
    Coefficients(#[from] CoefficientError),
}

/// A finite permutation group on `0..degree`, with all elements listed.
#[derive(Clone, Debug, Serialize)]
pub struct PermutationGroup {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    /// All elements; element 0 is the identity.
    pub elements: Vec<Vec<usize>>,
    /// For each element, a word in the generators producing it.
    #[serde(skip)]
    words: Vec<Vec<usize>>,
}

impl PermutationGroup {
    pub fn generate(degree: usize, generators: Vec<Vec<usize>>, cap: usize) -> Result<Self, EquivariantError> {
        for (i, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(EquivariantError::WrongLength {
                    generator: i,
                    got: g.len(),
                    expected: degree,
                });
            }
            let mut seen = vec![false; degree];
            for &v in g {
                if v >= degree || seen[v] {
                    return Err(EquivariantError::NotPermutation(i));
                }
                seen[v] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity.clone(), 0);
        let mut elements = vec![identity];
        let mut words = vec![Vec::new()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (gi, g) in generators.iter().enumerate() {
                let next = compose(g, &elements[e]);
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(EquivariantError::TooLarge(cap));
                    }
                    index.insert(next.clone(), elements.len());
                    let mut w = words[e].clone();
                    w.push(gi);
                    words.push(w);
                    elements.push(next);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        Ok(Self {
            degree,
            generators,
            elements,
            words,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::generate(degree, Vec::new(), 1).expect("identity only")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Word in the generators (applied first to last) giving element `e`.
    pub fn word(&self, e: usize) -> &[usize] {
        &self.words[e]
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.elements.iter().map(|g| g[x]).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// Orbits of `0..degree`, each sorted, ordered by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !seen[x] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    /// Indices of the elements fixing `x`.
    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        (0..self.order()).filter(|&e| self.elements[e][x] == x).collect()
    }
}

/// `(a ∘ b)(x) = a(b(x))`.
fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

/// Reads `{"perm": {elem: elem}}` style maps into index permutations;
/// unmapped elements are fixed.
pub fn permutations_from_label_maps(
    labels: &[Label],
    maps: &[BTreeMap<Label, Label>],
) -> Result<Vec<Vec<usize>>, EquivariantError> {
    let index = |l: &Label| {
        labels
            .iter()
            .position(|m| m == l)
            .ok_or_else(|| EquivariantError::UnknownElement(l.to_string()))
    };
    maps.iter()
        .map(|m| {
            let mut p: Vec<usize> = (0..labels.len()).collect();
            for (a, b) in m {
                p[index(a)?] = index(b)?;
            }
            Ok(p)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ActionReport {
    pub valid: bool,
    pub group_order: usize,
    pub generators_checked: usize,
    /// Order automorphisms map increasing chains to increasing chains, so the
    /// induced action on the order complex preserves simplex orientation.
    pub preserves_chain_orientation: bool,
}

/// Checks that every generator is an order automorphism of `p`.
pub fn validate_poset_action(p: &FinitePoset, generators: &[Vec<usize>]) -> Result<ActionReport, EquivariantError> {
    let group = PermutationGroup::generate(p.len(), generators.to_vec(), DEFAULT_CLOSURE_CAP)?;
    for (gi, g) in generators.iter().enumerate() {
        for a in 0..p.len() {
            for b in 0..p.len() {
                if p.lt(a, b) != p.lt(g[a], g[b]) {
                    let (below, above) = if p.lt(a, b) { (a, b) } else { (g[a], g[b]) };
                    return Err(EquivariantError::BreaksOrder {
                        generator: gi,
                        below: p.label(below).to_string(),
                        above: p.label(above).to_string(),
                    });
                }
            }
        }
    }
    Ok(ActionReport {
        valid: true,
        group_order: group.order(),
        generators_checked: generators.len(),
        preserves_chain_orientation: true,
    })
}

/// A permutation group acting on the vertices of an oriented complex,
/// simplicially and preserving the vertex order inside every simplex.
#[derive(Clone, Debug)]
pub struct ComplexAction {
    pub complex: OrientedComplex,
    pub group: PermutationGroup,
    /// `simplex_perms[e][id]` is the image of simplex `id` under element `e`.
    simplex_perms: Vec<Vec<usize>>,
}

impl ComplexAction {
    pub fn new(x: OrientedComplex, generators: Vec<Vec<usize>>) -> Result<Self, EquivariantError> {
        Self::with_cap(x, generators, DEFAULT_CLOSURE_CAP)
    }

    pub fn with_cap(x: OrientedComplex, generators: Vec<Vec<usize>>, cap: usize) -> Result<Self, EquivariantError> {
        let group = PermutationGroup::generate(x.vertex_count(), generators, cap)?;
        for (gi, g) in group.generators.iter().enumerate() {
            for s in x.simplices() {
                let image: Vec<usize> = s.vertices().iter().map(|&v| g[v]).collect();
                if image.windows(2).any(|w| w[0] > w[1]) {
                    return Err(EquivariantError::ReversesOrientation {
                        generator: gi,
                        simplex: x.display_simplex(s),
                    });
                }
                if x.id_of_vertices(&image).is_none() {
                    return Err(EquivariantError::NotSimplicial {
                        generator: gi,
                        simplex: x.display_simplex(s),
                    });
                }
            }
        }
        let simplex_perms = group
            .elements
            .iter()
            .map(|g| {
                x.simplices()
                    .iter()
                    .map(|s| {
                        let image: Vec<usize> = s.vertices().iter().map(|&v| g[v]).collect();
                        x.id_of_vertices(&image).expect("checked on generators")
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            complex: x,
            group,
            simplex_perms,
        })
    }

    /// The action of poset automorphisms on the order complex.
    pub fn from_poset(p: &FinitePoset, generators: &[Vec<usize>]) -> Result<Self, EquivariantError> {
        validate_poset_action(p, generators)?;
        let x = p.order_complex();
        let to_vertex: Vec<usize> = (0..p.len())
            .map(|e| {
                x.vertex_index(p.label(e))
                    .expect("order complex vertices are the elements")
            })
            .collect();
        let gens = generators
            .iter()
            .map(|g| {
                let mut perm = vec![0; p.len()];
                for e in 0..p.len() {
                    perm[to_vertex[e]] = to_vertex[g[e]];
                }
                perm
            })
            .collect();
        Self::new(x, gens)
    }

    pub fn report(&self) -> ActionReport {
        ActionReport {
            valid: true,
            group_order: self.group.order(),
            generators_checked: self.group.generators.len(),
            preserves_chain_orientation: true,
        }
    }

    pub fn act_on_simplex(&self, element: usize, id: usize) -> usize {
        self.simplex_perms[element][id]
    }

    /// Index in `group.elements` of generator `gi`.
    pub fn generator_element(&self, gi: usize) -> usize {
        let g = &self.group.generators[gi];
        self.group
            .elements
            .iter()
            .position(|e| e == g)
            .expect("generators are elements")
    }

    /// Permutation matrix of element `e` on the degree-`k` cochains.
    pub fn cochain_matrix(&self, e: usize, k: usize) -> IntMatrix {
        let ids = self.complex.ids_of_dim(k);
        let start = ids.start;
        let m = ids.len();
        let mut out = IntMatrix::zeros(m, m);
        for id in ids {
            out.set(self.act_on_simplex(e, id) - start, id - start, BigInt::from(1));
        }
        out
    }

    /// Matrix of element `e` on the degree-`k` terms of a cosheaf chain
    /// complex with values in `h` (local cohomology).
    pub fn cosheaf_matrix(&self, e: usize, h: &LocalHomology, c: &CoefficientComplex, k: usize) -> IntMatrix {
        let r = c.rank(k);
        let mut out = IntMatrix::zeros(r, r);
        for t in &c.terms[k] {
            let src = c.block(k, t.simplex).expect("term block") + t.generator;
            let target_simplex = self.act_on_simplex(e, t.simplex);
            let Some(dst) = c.block(k, target_simplex) else {
                continue;
            };
            let rep = h.data[t.simplex].generator(t.generator);
            let mut moved = vec![BigInt::from(0); h.bases[target_simplex].len()];
            for (i, &tau) in h.bases[t.simplex].iter().enumerate() {
                let img = self.act_on_simplex(e, tau);
                let pos = h.bases[target_simplex]
                    .iter()
                    .position(|&u| u == img)
                    .expect("stars map to stars");
                moved[pos] = rep[i].clone();
            }
            let coords = h.data[target_simplex]
                .class_of(&moved)
                .expect("cocycles map to cocycles");
            for (g, v) in coords.into_iter().enumerate() {
                out.set(dst + g, src, v);
            }
        }
        out
    }
}

/// A module `Z^r / relations` with one action matrix per group generator.
#[derive(Clone, Debug)]
pub struct ModuleWithAction {
    pub rank: usize,
    /// Relation columns; empty for a free module.
    pub relations: IntMatrix,
    pub action: Vec<IntMatrix>,
}

impl ModuleWithAction {
    pub fn free(rank: usize, action: Vec<IntMatrix>) -> Self {
        Self {
            rank,
            relations: IntMatrix::zeros(rank, 0),
            action,
        }
    }

    pub fn group(&self) -> FgAbelianGroup {
        FgAbelianGroup::cokernel(&self.relations)
    }

    /// Action matrices are invertible over Z and preserve the relations.
    pub fn validate(&self) -> Result<(), EquivariantError> {
        let rel = crate::algebra::Lattice::span(&self.relations);
        for (i, a) in self.action.iter().enumerate() {
            if !a.is_square() || a.rows() != self.rank || !is_unimodular(a) {
                return Err(EquivariantError::NotInvertible(i));
            }
            if !rel.contains_all(&a.mul(&self.relations)) {
                return Err(EquivariantError::RelationsNotPreserved(i));
            }
        }
        Ok(())
    }

    /// Checks `M(g)·M(e) = M(g∘e)` modulo relations for every element `e`
    /// and generator `g`, with `M(e)` built from the closure words.
    pub fn respects_group(&self, group: &PermutationGroup) -> Result<(), EquivariantError> {
        let rel = crate::algebra::Lattice::span(&self.relations);
        let matrix_of = |e: usize| {
            group
                .word(e)
                .iter()
                .fold(IntMatrix::identity(self.rank), |acc, &g| self.action[g].mul(&acc))
        };
        let index: HashMap<&Vec<usize>, usize> = group.elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mats: Vec<IntMatrix> = (0..group.order()).map(matrix_of).collect();
        for e in 0..group.order() {
            for (gi, g) in group.generators.iter().enumerate() {
                let prod = compose(g, &group.elements[e]);
                let target = index[&prod];
                let diff = self.action[gi].mul(&mats[e]).sub(&mats[target]);
                if !rel.contains_all(&diff) {
                    return Err(EquivariantError::NotAHomomorphism(target));
                }
            }
        }
        Ok(())
    }

    /// Relations of the coinvariants: the module relations plus `g·m − m`.
    fn coinvariant_relations(&self) -> IntMatrix {
        let id = IntMatrix::identity(self.rank);
        let diffs: Vec<IntMatrix> = self.action.iter().map(|a| a.sub(&id)).collect();
        let mut blocks: Vec<&IntMatrix> = vec![&self.relations];
        blocks.extend(diffs.iter());
        IntMatrix::hstack(&blocks)
    }
}

fn is_unimodular(a: &IntMatrix) -> bool {
    let f = crate::algebra::invariant_factors(a);
    f.len() == a.rows() && f.iter().all(|d| d == &BigInt::from(1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Ring {
    Z,
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Coinvariants {
    Integral(FgAbelianGroup),
    RationalDimension(usize),
}

/// `M_G = M / ⟨g·m − m⟩` over Z, or its dimension after tensoring with Q.
pub fn coinvariants(m: &ModuleWithAction, over: Ring) -> Result<Coinvariants, EquivariantError> {
    m.validate()?;
    let rel = m.coinvariant_relations();
    Ok(match over {
        Ring::Z => Coinvariants::Integral(FgAbelianGroup::cokernel(&rel)),
        Ring::Q => Coinvariants::RationalDimension(m.rank - rank(&rel)),
    })
}

fn require_locally_cm(x: &OrientedComplex) -> Result<usize, EquivariantError> {
    let v = cm_verdict(x).map_err(|_| EquivariantError::Empty)?;
    if !v.locally_cm {
        return Err(EquivariantError::NotLocallyCm(v.offending_simplices));
    }
    Ok(v.dimension)
}

fn require_concentrated(x: &OrientedComplex, n: usize) -> Result<(), EquivariantError> {
    let bad: Vec<isize> = x
        .reduced_cohomology()
        .support()
        .into_iter()
        .filter(|&d| d != n as isize)
        .collect();
    if !bad.is_empty() {
        return Err(EquivariantError::NotConcentrated(bad));
    }
    Ok(())
}

/// Shared data for the top-degree computations.
struct TopData {
    n: usize,
    h: LocalHomology,
    chains: CoefficientComplex,
    /// `δ_{n-1}: C^{n-1} → C^n`.
    coboundary: IntMatrix,
    /// `d_1: C_1(X;h^n) → C_0(X;h^n)`.
    d1: IntMatrix,
    /// Cap `c_n: C^n → C_0(X;h^n)`.
    cap: IntMatrix,
}

impl TopData {
    fn compute(x: &OrientedComplex, require_concentration: bool) -> Result<Self, EquivariantError> {
        let n = require_locally_cm(x)?;
        if require_concentration {
            require_concentrated(x, n)?;
        }
        let h = local_cohomology_cosheaf(x, n);
        let chains = cosheaf_chain_complex(x, &h.system, &Selection::all(x))?;
        let coboundary = if n == 0 {
            IntMatrix::zeros(x.count(0), 0)
        } else {
            x.chain_complex().dual().coboundary(n - 1)
        };
        let d1 = chains.chains.as_ref().expect("cosheaf complex").boundary(1);
        let source: Vec<usize> = x.ids_of_dim(n).collect();
        let (cap, _) = cap_matrix(x, &h, n, n, &source, &chains);
        Ok(Self {
            n,
            h,
            chains,
            coboundary,
            d1,
            cap,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivarianceCheck {
    pub generator: usize,
    pub commutes: bool,
}

/// The resolution `C_1(X;h^n) → C_0(X;h^n) → D → 0` and the two
/// presentations of `D`.
#[derive(Clone, Debug, Serialize)]
pub struct TopResolution {
    pub dimension: usize,
    /// `D` as `C^n / im δ`.
    pub cochain_presentation: FgAbelianGroup,
    /// `D` as `C_0(X;h^n) / im d_1`.
    pub cosheaf_presentation: FgAbelianGroup,
    /// The cap `c_n` induces an isomorphism between the two.
    pub presentations_isomorphic: bool,
    /// `H_k(X;h^n) = 0` for `0 < k < n`.
    pub exact_in_middle_degrees: bool,
    /// `H_n(X;h^n)`, which on a finite complex is `H^0(X;Z)` and so never
    /// vanishes; the resolution is only exact below the top degree.
    pub top_remainder: FgAbelianGroup,
    pub top_remainder_is_h0: bool,
    pub cosheaf_homology: crate::algebra::GradedGroups,
    pub equivariance: Vec<EquivarianceCheck>,
}

pub fn top_resolution(x: &OrientedComplex, action: Option<&ComplexAction>) -> Result<TopResolution, EquivariantError> {
    let t = TopData::compute(x, true)?;
    let hom = PresentedHom::new(
        Presentation::new(t.coboundary.clone()),
        Presentation::new(t.d1.clone()),
        t.cap.clone(),
    );
    let presentations_isomorphic = hom.is_well_defined() && hom.is_isomorphism();
    let cosheaf_homology = t.chains.groups();
    let exact_in_middle_degrees = (1..t.n).all(|k| cosheaf_homology.get(k as isize).is_trivial());
    let top_remainder = if t.n > 0 {
        cosheaf_homology.get(t.n as isize)
    } else {
        FgAbelianGroup::trivial()
    };
    let top_remainder_is_h0 = t.n == 0 || top_remainder == x.cohomology().get(0);
    let equivariance = match action {
        Some(a) => (0..a.group.generators.len())
            .map(|gi| {
                let e = a.generator_element(gi);
                let lhs = a.cosheaf_matrix(e, &t.h, &t.chains, 0).mul(&t.cap);
                let rhs = t.cap.mul(&a.cochain_matrix(e, t.n));
                EquivarianceCheck {
                    generator: gi,
                    commutes: lhs == rhs,
                }
            })
            .collect(),
        None => Vec::new(),
    };
    Ok(TopResolution {
        dimension: t.n,
        cochain_presentation: FgAbelianGroup::cokernel(&t.coboundary),
        cosheaf_presentation: FgAbelianGroup::cokernel(&t.d1),
        presentations_isomorphic,
        exact_in_middle_degrees,
        top_remainder,
        top_remainder_is_h0,
        cosheaf_homology,
        equivariance,
    })
}

fn check_initial_vertices(x: &OrientedComplex, n: usize, in_o: &[bool]) -> Result<(), EquivariantError> {
    for s in x.simplices_of_dim(n) {
        if !in_o[s.vertices()[0]] {
            return Err(EquivariantError::InitialVertexOutside(x.display_simplex(s)));
        }
    }
    Ok(())
}

/// Inclusion of `R = ⊕_{ρ ∈ O} h^n(ρ)` into `C_0(X;h^n)`.
fn rose_inclusion(x: &OrientedComplex, chains: &CoefficientComplex, o: &[usize]) -> (IntMatrix, Vec<usize>) {
    let mut cols = Vec::new();
    let mut rows_of_r = Vec::new();
    for &v in o {
        let id = x.id_of(&Simplex::from_sorted(vec![v])).expect("vertex");
        if let Some(b) = chains.block(0, id) {
            for g in 0..chains.terms[0].iter().filter(|t| t.simplex == id).count() {
                rows_of_r.push(b + g);
            }
        }
    }
    let c0 = chains.rank(0);
    for &r in &rows_of_r {
        let mut c = vec![BigInt::from(0); c0];
        c[r] = BigInt::from(1);
        cols.push(c);
    }
    (IntMatrix::from_columns(c0, &cols), rows_of_r)
}

#[derive(Clone, Debug, Serialize)]
pub struct RoseQuotient {
    pub vertices: Vec<String>,
    pub rose_rank: usize,
    /// `im d_1 ∩ R`, as a subgroup of `R`.
    pub intersection_rank: usize,
    pub quotient: FgAbelianGroup,
    pub dualizing_module: FgAbelianGroup,
    /// Every class of `C_0(X;h^n)/im d_1` has a representative in `R`.
    pub representatives_in_rose: bool,
    pub isomorphic_to_dualizing_module: bool,
}

/// Intersection `im a ∩ im b` in coordinates of `b`'s columns.
fn intersection_in_b(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let combined = IntMatrix::hstack(&[a, &b.neg()]);
    let k = kernel_basis(&combined);
    k.select_rows(a.cols()..a.cols() + b.cols())
}

pub fn rose_quotient(
    x: &OrientedComplex,
    action: Option<&ComplexAction>,
    vertices: &[usize],
) -> Result<RoseQuotient, EquivariantError> {
    let t = TopData::compute(x, false)?;
    let mut in_o = vec![false; x.vertex_count()];
    for &v in vertices {
        in_o[v] = true;
    }
    if let Some(a) = action {
        for g in &a.group.generators {
            if let Some(&v) = vertices.iter().find(|&&v| !in_o[g[v]]) {
                return Err(EquivariantError::NotInvariant(x.label(v).to_string()));
            }
        }
    }
    check_initial_vertices(x, t.n, &in_o)?;
    let o: Vec<usize> = (0..x.vertex_count()).filter(|&v| in_o[v]).collect();
    let (incl, _) = rose_inclusion(x, &t.chains, &o);
    let rel = intersection_in_b(&t.d1, &incl);
    let hom = PresentedHom::new(
        Presentation::new(rel.clone()),
        Presentation::new(t.d1.clone()),
        incl.clone(),
    );
    let quotient = FgAbelianGroup::cokernel(&rel);
    let dualizing_module = FgAbelianGroup::cokernel(&t.coboundary);
    let representatives_in_rose = hom.is_surjective();
    Ok(RoseQuotient {
        vertices: o.iter().map(|&v| x.label(v).to_string()).collect(),
        rose_rank: incl.cols(),
        intersection_rank: rank(&rel),
        isomorphic_to_dualizing_module: hom.is_well_defined() && hom.is_isomorphism() && quotient == dualizing_module,
        quotient,
        dualizing_module,
        representatives_in_rose,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RepresentativeTerm {
    pub vertex: String,
    pub stabilizer_order: usize,
    pub local_rank: usize,
    /// `(h^n(ρ) ⊗ Q)_{Stab ρ}`.
    pub rational_coinvariants: usize,
    /// `h^n(ρ)_{Stab ρ}` over Z.
    pub integral_coinvariants: FgAbelianGroup,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub group_order: usize,
    pub orbit_vertices: Vec<String>,
    pub representatives: Vec<RepresentativeTerm>,
    /// `dim_Q (D ⊗ Q)_G` from `C^n / im δ`.
    pub lhs: usize,
    /// The same dimension computed from `C_0(X;h^n) / im d_1`.
    pub lhs_from_cosheaf: usize,
    /// `Σ_ρ dim_Q (h^n(ρ) ⊗ Q)_{Stab ρ}`.
    pub rhs: usize,
    pub holds: bool,
    pub equality: bool,
    /// `R_G` over Z.
    pub rose_coinvariants: FgAbelianGroup,
    /// `⊕_ρ h^n(ρ)_{Stab ρ}` over Z.
    pub shapiro_sum: FgAbelianGroup,
    pub shapiro_holds: bool,
    /// `R_G → D_G` is well defined and onto.
    pub surjection_verified: bool,
}

/// `dim_Q (D⊗Q)_G ≤ Σ_ρ dim_Q (h^n(ρ)⊗Q)_{Stab ρ}` for orbit representatives
/// `ρ` whose orbits contain the initial vertex of every top simplex.
pub fn dualizing_bound_report(
    action: &ComplexAction,
    representatives: &[usize],
) -> Result<BoundReport, EquivariantError> {
    let x = &action.complex;
    let t = TopData::compute(x, false)?;
    let group = &action.group;
    let mut in_o = vec![false; x.vertex_count()];
    for (i, &r) in representatives.iter().enumerate() {
        for &other in &representatives[..i] {
            if group.orbit(other).contains(&r) {
                return Err(EquivariantError::SameOrbit(
                    x.label(other).to_string(),
                    x.label(r).to_string(),
                ));
            }
        }
        for v in group.orbit(r) {
            in_o[v] = true;
        }
    }
    check_initial_vertices(x, t.n, &in_o)?;
    let o: Vec<usize> = (0..x.vertex_count()).filter(|&v| in_o[v]).collect();

    let gen_elements: Vec<usize> = (0..group.generators.len())
        .map(|gi| action.generator_element(gi))
        .collect();

    // Left side, twice.
    let cn = x.count(t.n);
    let p_minus: Vec<IntMatrix> = gen_elements
        .iter()
        .map(|&e| action.cochain_matrix(e, t.n).sub(&IntMatrix::identity(cn)))
        .collect();
    let mut blocks: Vec<&IntMatrix> = vec![&t.coboundary];
    blocks.extend(p_minus.iter());
    let lhs = cn - rank(&IntMatrix::hstack(&blocks));

    let c0 = t.chains.rank(0);
    let a_full: Vec<IntMatrix> = gen_elements
        .iter()
        .map(|&e| action.cosheaf_matrix(e, &t.h, &t.chains, 0))
        .collect();
    let a_minus: Vec<IntMatrix> = a_full.iter().map(|a| a.sub(&IntMatrix::identity(c0))).collect();
    let mut blocks: Vec<&IntMatrix> = vec![&t.d1];
    blocks.extend(a_minus.iter());
    let d_g_relations = IntMatrix::hstack(&blocks);
    let lhs_from_cosheaf = c0 - rank(&d_g_relations);

    // Right side per representative.
    let mut terms = Vec::new();
    let mut shapiro_invariants = Vec::new();
    let mut shapiro_free = 0;
    for &r in representatives {
        let id = x.id_of(&Simplex::from_sorted(vec![r])).expect("vertex");
        let local_rank = t.h.data[id].generator_count();
        let stab = group.stabilizer(r);
        let block = t.chains.block(0, id);
        let mats: Vec<IntMatrix> = stab
            .iter()
            .map(|&e| {
                let full = action.cosheaf_matrix(e, &t.h, &t.chains, 0);
                let b = block.expect("nonzero local group");
                full.select_rows(b..b + local_rank)
                    .select_cols(b..b + local_rank)
                    .sub(&IntMatrix::identity(local_rank))
            })
            .collect();
        let rel = if mats.is_empty() || local_rank == 0 {
            IntMatrix::zeros(local_rank, 0)
        } else {
            IntMatrix::hstack(&mats.iter().collect::<Vec<_>>())
        };
        let integral = FgAbelianGroup::cokernel(&rel);
        shapiro_free += integral.free_rank;
        shapiro_invariants.extend(integral.torsion.iter().cloned());
        terms.push(RepresentativeTerm {
            vertex: x.label(r).to_string(),
            stabilizer_order: stab.len(),
            local_rank,
            rational_coinvariants: local_rank - rank(&rel),
            integral_coinvariants: integral,
        });
    }
    let rhs = terms.iter().map(|t| t.rational_coinvariants).sum();
    let shapiro_sum = FgAbelianGroup::from_invariants(shapiro_free, shapiro_invariants);

    // R_G and the map R_G → D_G.
    let (incl, rows) = rose_inclusion(x, &t.chains, &o);
    let rr = incl.cols();
    let r_minus: Vec<IntMatrix> = a_full
        .iter()
        .map(|a| {
            let sub = IntMatrix::from_fn(rr, rr, |i, j| a.get(rows[i], rows[j]).clone());
            sub.sub(&IntMatrix::identity(rr))
        })
        .collect();
    let r_relations = if r_minus.is_empty() || rr == 0 {
        IntMatrix::zeros(rr, 0)
    } else {
        IntMatrix::hstack(&r_minus.iter().collect::<Vec<_>>())
    };
    let rose_coinvariants = FgAbelianGroup::cokernel(&r_relations);
    let hom = PresentedHom::new(Presentation::new(r_relations), Presentation::new(d_g_relations), incl);
    let surjection_verified = hom.is_well_defined() && hom.is_surjective();

    Ok(BoundReport {
        group_order: group.order(),
        orbit_vertices: o.iter().map(|&v| x.label(v).to_string()).collect(),
        representatives: terms,
        lhs,
        lhs_from_cosheaf,
        rhs,
        holds: lhs <= rhs,
        equality: lhs == rhs,
        shapiro_holds: rose_coinvariants == shapiro_sum,
        rose_coinvariants,
        shapiro_sum,
        surjection_verified,
    })
}

/// All vertex permutations of `x` that map simplices to simplices, found by
/// brute force (intended for small complexes).
pub fn automorphisms(x: &OrientedComplex) -> Vec<Vec<usize>> {
    let n = x.vertex_count();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let maximal: Vec<&Simplex> = x.maximal_simplices().iter().map(|&m| x.simplex(m)).collect();
    fn rec(
        x: &OrientedComplex,
        maximal: &[&Simplex],
        perm: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = used.len();
        if perm.len() == n {
            let ok = maximal.iter().all(|s| {
                let mut img: Vec<usize> = s.vertices().iter().map(|&v| perm[v]).collect();
                img.sort_unstable();
                x.id_of_vertices(&img).is_some_and(|id| x.is_maximal(id))
            });
            if ok {
                out.push(perm.clone());
            }
            return;
        }
        let k = perm.len();
        for v in 0..n {
            if used[v] {
                continue;
            }
            // Partial check: edges among assigned vertices must map to edges.
            let ok = (0..k).all(|u| {
                let edge = x.id_of_vertices(&[u, k]).is_some();
                let (a, b) = if perm[u] < v { (perm[u], v) } else { (v, perm[u]) };
                edge == x.id_of_vertices(&[a, b]).is_some()
            }) && (x.id_of_vertices(&[k]).is_some() == x.id_of_vertices(&[v]).is_some());
            if !ok {
                continue;
            }
            used[v] = true;
            perm.push(v);
            rec(x, maximal, perm, used, out);
            perm.pop();
            used[v] = false;
        }
    }
    rec(x, &maximal, &mut perm, &mut used, &mut out);
    out
}

/// Induces a complex automorphism on the face poset labels `"a-b-c"` used
/// by [`crate::fixtures::face_poset`].
pub fn induced_on_face_poset(x: &OrientedComplex, p: &FinitePoset, perm: &[usize]) -> Vec<usize> {
    (0..p.len())
        .map(|e| {
            let name = p.label(e).to_string();
            let mut verts: Vec<usize> = name
                .split('-')
                .map(|s| {
                    perm[x
                        .vertex_index(&s.parse::<Label>().expect("infallible"))
                        .expect("face poset label")]
                })
                .collect();
            verts.sort_unstable();
            let image: Vec<String> = verts.iter().map(|&v| x.label(v).to_string()).collect();
            p.index_of(&Label::Str(image.join("-")))
                .expect("automorphisms map faces to faces")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn face_poset_action(generators: &[Vec<usize>]) -> ComplexAction {
        let base = fixtures::cycle(3);
        let p = fixtures::face_poset(&base);
        let gens: Vec<Vec<usize>> = generators.iter().map(|g| induced_on_face_poset(&base, &p, g)).collect();
        ComplexAction::from_poset(&p, &gens).unwrap()
    }

    fn vertex_elements(a: &ComplexAction) -> Vec<usize> {
        (0..a.complex.vertex_count())
            .filter(|&v| !a.complex.label(v).to_string().contains('-'))
            .collect()
    }

    #[test]
    fn closure_of_s3() {
        let g = PermutationGroup::generate(3, vec![vec![1, 2, 0], vec![1, 0, 2]], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.stabilizer(0).len(), 2);
        assert_eq!(g.orbits(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn closure_cap() {
        let g = PermutationGroup::generate(3, vec![vec![1, 2, 0], vec![1, 0, 2]], 4);
        assert_eq!(g.unwrap_err(), EquivariantError::TooLarge(4));
    }

    #[test]
    fn poset_actions() {
        let p = fixtures::triangle_face_poset();
        let rot = vec![1, 2, 0, 5, 3, 4];
        // a->b, b->c, c->a, ab->bc, ac->ab, bc->ac
        let r = validate_poset_action(&p, std::slice::from_ref(&rot)).unwrap();
        assert_eq!(r.group_order, 3);
        let bad = vec![3, 1, 2, 0, 4, 5];
        assert!(matches!(
            validate_poset_action(&p, &[bad]),
            Err(EquivariantError::BreaksOrder { .. })
        ));
        let g = PermutationGroup::generate(6, vec![rot], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.orbit(0).len(), 3);
        assert_eq!(g.stabilizer(0).len(), 1);
    }

    #[test]
    fn coinvariant_examples() {
        let trivial = ModuleWithAction::free(2, vec![IntMatrix::identity(2)]);
        assert_eq!(
            coinvariants(&trivial, Ring::Z).unwrap(),
            Coinvariants::Integral(FgAbelianGroup::free(2))
        );
        let neg = ModuleWithAction::free(1, vec![IntMatrix::from_rows(&[[-1]])]);
        assert_eq!(coinvariants(&neg, Ring::Z).unwrap().to_string_lossy(), "Z/2");
        assert_eq!(coinvariants(&neg, Ring::Q).unwrap(), Coinvariants::RationalDimension(0));
        let swap = ModuleWithAction::free(2, vec![IntMatrix::from_rows(&[[0, 1], [1, 0]])]);
        assert_eq!(
            coinvariants(&swap, Ring::Z).unwrap(),
            Coinvariants::Integral(FgAbelianGroup::free(1))
        );
        assert_eq!(
            coinvariants(&swap, Ring::Q).unwrap(),
            Coinvariants::RationalDimension(1)
        );
        let singular = ModuleWithAction::free(1, vec![IntMatrix::from_rows(&[[2]])]);
        assert_eq!(
            coinvariants(&singular, Ring::Z),
            Err(EquivariantError::NotInvertible(0))
        );
    }

    impl Coinvariants {
        fn to_string_lossy(&self) -> String {
            match self {
                Coinvariants::Integral(g) => g.to_string(),
                Coinvariants::RationalDimension(d) => d.to_string(),
            }
        }
    }

    #[test]
    fn hexagon_resolution() {
        let a = face_poset_action(&[vec![1, 2, 0], vec![1, 0, 2]]);
        let r = top_resolution(&a.complex, Some(&a)).unwrap();
        assert_eq!(r.cochain_presentation, FgAbelianGroup::free(1));
        assert_eq!(r.cosheaf_presentation, FgAbelianGroup::free(1));
        assert!(r.presentations_isomorphic && r.exact_in_middle_degrees && r.top_remainder_is_h0);
        assert!(r.equivariance.iter().all(|e| e.commutes));
    }

    #[test]
    fn k4_and_simplex_resolutions() {
        let r = top_resolution(&fixtures::k4(), None).unwrap();
        assert_eq!(r.cochain_presentation, FgAbelianGroup::free(3));
        assert!(r.presentations_isomorphic);
        let r = top_resolution(&fixtures::triangle(), None).unwrap();
        assert!(
            r.cochain_presentation.is_trivial()
                && r.presentations_isomorphic
                && r.exact_in_middle_degrees
                && r.top_remainder_is_h0
        );
    }

    #[test]
    fn rose_quotients() {
        let a = face_poset_action(&[vec![1, 2, 0]]);
        let o = vertex_elements(&a);
        let q = rose_quotient(&a.complex, Some(&a), &o).unwrap();
        assert_eq!(q.rose_rank, 3);
        assert!(q.isomorphic_to_dualizing_module);
        let all: Vec<usize> = (0..a.complex.vertex_count()).collect();
        let q = rose_quotient(&a.complex, None, &all).unwrap();
        assert!(q.isomorphic_to_dualizing_module);
        let edges: Vec<usize> = (0..6).filter(|v| !o.contains(v)).collect();
        assert!(matches!(
            rose_quotient(&a.complex, None, &edges),
            Err(EquivariantError::InitialVertexOutside(_))
        ));
    }

    #[test]
    fn hexagon_bounds() {
        let s3 = face_poset_action(&[vec![1, 2, 0], vec![1, 0, 2]]);
        let rho = vertex_elements(&s3)[0];
        let b = dualizing_bound_report(&s3, &[rho]).unwrap();
        assert_eq!((b.lhs, b.rhs), (0, 0));
        assert!(b.shapiro_holds && b.surjection_verified);

        let z3 = face_poset_action(&[vec![1, 2, 0]]);
        let b = dualizing_bound_report(&z3, &[rho]).unwrap();
        assert_eq!((b.lhs, b.rhs), (1, 1));
        assert_eq!(b.lhs, b.lhs_from_cosheaf);
        assert!(b.shapiro_holds && b.surjection_verified);
    }

    #[test]
    fn k4_trivial_group_bound() {
        let a = ComplexAction::new(fixtures::k4(), Vec::new()).unwrap();
        let b = dualizing_bound_report(&a, &[0, 1, 2, 3]).unwrap();
        assert_eq!((b.lhs, b.rhs), (3, 8));
        assert!(b.shapiro_holds);
    }

    #[test]
    fn orientation_reversing_rejected() {
        let x = fixtures::k4();
        assert!(matches!(
            ComplexAction::new(x, vec![vec![1, 0, 2, 3]]),
            Err(EquivariantError::ReversesOrientation { .. })
        ));
    }

    #[test]
    fn automorphisms_of_small_complexes() {
        assert_eq!(automorphisms(&fixtures::k4()).len(), 24);
        assert_eq!(automorphisms(&fixtures::cycle(5)).len(), 10);
        assert_eq!(automorphisms(&fixtures::t7()).len(), 42);
    }
}
