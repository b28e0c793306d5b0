//! Finite oriented simplicial complexes.
//!
//! The orientation is a single global total order on the vertices: vertex
//! `i` is the `i`-th entry of the declared vertex list, and every simplex is
//! stored as a strictly increasing tuple of vertex indices. Front and back
//! faces are therefore canonical.
//!
//! Simplices are addressed by a flat id; ids are sorted by dimension and
//! then lexicographically, which is also the basis order used for every
//! chain group built from a complex.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Range;

use log::warn;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{GradedGroups, IntMatrix, IntegerChainComplex};

/// A vertex (or poset element) identifier as it appears in input files.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Str(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Str(s) => write!(f, "{s}"),
        }
    }
}

/// Integers parse as [`Label::Int`], anything else as [`Label::Str`].
impl std::str::FromStr for Label {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(s.parse::<i64>().map_or_else(|_| Label::Str(s.to_string()), Label::Int))
    }
}

impl From<i64> for Label {
    fn from(v: i64) -> Self {
        Label::Int(v)
    }
}

impl From<usize> for Label {
    fn from(v: usize) -> Self {
        Label::Int(v as i64)
    }
}

impl From<&str> for Label {
    fn from(v: &str) -> Self {
        Label::Str(v.to_string())
    }
}

impl From<String> for Label {
    fn from(v: String) -> Self {
        Label::Str(v)
    }
}

/// A simplex as a strictly increasing tuple of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts and validates the vertex tuple.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::RepeatedVertex(w[0].to_string()));
        }
        Ok(Simplex(vertices))
    }

    /// Wraps an already strictly increasing tuple.
    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The `i`-th facet: drop the `i`-th vertex. `None` for vertices.
    pub fn facet(&self, i: usize) -> Option<Simplex> {
        if self.0.len() < 2 {
            return None;
        }
        let mut v = self.0.clone();
        v.remove(i);
        Some(Simplex(v))
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        // both sorted
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_disjoint_from(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains_vertex(*v))
    }

    /// Vertex union; `None` if it would repeat a vertex.
    pub fn join(&self, other: &Simplex) -> Option<Simplex> {
        if !self.is_disjoint_from(other) {
            return None;
        }
        let mut v: Vec<usize> = self.0.iter().chain(&other.0).copied().collect();
        v.sort_unstable();
        Some(Simplex(v))
    }

    /// Splits `[v_0..v_k]` into the front `(k-l)`-face `[v_0..v_{k-l}]` and
    /// the back `l`-face `[v_{k-l}..v_k]`; they share the vertex `v_{k-l}`.
    pub fn face_split(&self, l: usize) -> Result<(Simplex, Simplex), ComplexError> {
        let k = self.dim();
        if l > k {
            return Err(ComplexError::FaceIndexOutOfRange { l, dim: k });
        }
        let front = Simplex(self.0[..=k - l].to_vec());
        let back = Simplex(self.0[k - l..].to_vec());
        Ok((front, back))
    }

    pub fn front_face(&self, dim: usize) -> Simplex {
        Simplex(self.0[..=dim].to_vec())
    }

    pub fn back_face(&self, dim: usize) -> Simplex {
        let k = self.dim();
        Simplex(self.0[k - dim..].to_vec())
    }

    /// All nonempty subsets, as simplices.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        assert!(n < 31, "simplex too large to enumerate faces");
        (1u32..(1 << n))
            .map(|mask| Simplex((0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.0[i]).collect()))
            .collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("empty simplex")]
    EmptySimplex,
    #[error("vertex {0} repeated inside a simplex")]
    RepeatedVertex(String),
    #[error("vertex {0} is not in the declared vertex order")]
    UnknownVertex(String),
    #[error("vertex {0} declared twice")]
    DuplicateDeclaration(String),
    #[error("simplex {0} is not in the complex")]
    NotInComplex(String),
    #[error("face index l = {l} out of range for a {dim}-simplex")]
    FaceIndexOutOfRange { l: usize, dim: usize },
    #[error("vertex order is not a permutation of the vertices")]
    BadOrder,
    #[error("simplex set is not downward closed")]
    NotSubcomplex,
}

/// Non-fatal observations made while building a complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BuildWarning {
    /// An input facet is contained in another input facet.
    ContainedFacet { facet: Vec<String>, container: Vec<String> },
    /// The same facet was listed more than once.
    DuplicateFacet(Vec<String>),
}

impl fmt::Display for BuildWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildWarning::ContainedFacet { facet, container } => write!(
                f,
                "facet [{}] is contained in facet [{}]",
                facet.join(","),
                container.join(",")
            ),
            BuildWarning::DuplicateFacet(s) => write!(f, "facet [{}] listed twice", s.join(",")),
        }
    }
}

/// A finite abstract simplicial complex with a total vertex order.
#[derive(Clone, Debug)]
pub struct OrientedComplex {
    labels: Vec<Label>,
    simplices: Vec<Simplex>,
    dim_offsets: Vec<usize>,
    lookup: HashMap<Simplex, usize>,
    cofacets: Vec<Vec<usize>>,
}

impl PartialEq for OrientedComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.simplices == other.simplices
    }
}

impl Eq for OrientedComplex {}

/// Builds the downward closure of `facets` over the declared vertex order.
///
/// Facets contained in other facets are accepted with a warning.
pub fn build_complex(
    vertices: &[Label],
    facets: &[Vec<Label>],
) -> Result<(OrientedComplex, Vec<BuildWarning>), ComplexError> {
    let mut index = HashMap::new();
    for (i, l) in vertices.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(ComplexError::DuplicateDeclaration(l.to_string()));
        }
    }
    let mut tuples = Vec::with_capacity(facets.len());
    for f in facets {
        let mut idx = Vec::with_capacity(f.len());
        for l in f {
            let i = *index.get(l).ok_or_else(|| ComplexError::UnknownVertex(l.to_string()))?;
            idx.push(i);
        }
        let s = Simplex::new(idx).map_err(|e| match e {
            ComplexError::RepeatedVertex(i) => {
                ComplexError::RepeatedVertex(vertices[i.parse::<usize>().unwrap()].to_string())
            }
            other => other,
        })?;
        tuples.push(s);
    }
    let names = |s: &Simplex| -> Vec<String> { s.vertices().iter().map(|&v| vertices[v].to_string()).collect() };
    let mut warnings = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, s) in tuples.iter().enumerate() {
        if !seen.insert(s.clone()) {
            warnings.push(BuildWarning::DuplicateFacet(names(s)));
            continue;
        }
        if let Some(t) = tuples
            .iter()
            .enumerate()
            .find(|(j, t)| *j != i && t.dim() > s.dim() && s.is_face_of(t))
            .map(|(_, t)| t)
        {
            warnings.push(BuildWarning::ContainedFacet {
                facet: names(s),
                container: names(t),
            });
        }
    }
    for w in &warnings {
        warn!("{w}");
    }
    Ok((OrientedComplex::from_simplices(vertices.to_vec(), tuples), warnings))
}

impl OrientedComplex {
    /// Downward closure of the given simplices over `labels`.
    pub fn from_simplices(labels: Vec<Label>, generators: impl IntoIterator<Item = Simplex>) -> Self {
        let mut all = BTreeSet::new();
        for s in generators {
            debug_assert!(s.vertices().iter().all(|&v| v < labels.len()));
            if all.contains(&s) {
                continue;
            }
            for f in s.faces() {
                all.insert(f);
            }
        }
        Self::from_closed_set(labels, all.into_iter().collect())
    }

    /// Builds from a set that is already downward closed.
    fn from_closed_set(labels: Vec<Label>, mut simplices: Vec<Simplex>) -> Self {
        simplices.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        simplices.dedup();
        let top = simplices.last().map(|s| s.dim());
        let mut dim_offsets = vec![0];
        if let Some(top) = top {
            let mut i = 0;
            for k in 0..=top {
                while i < simplices.len() && simplices[i].dim() == k {
                    i += 1;
                }
                dim_offsets.push(i);
            }
        }
        let lookup: HashMap<Simplex, usize> = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mut cofacets = vec![Vec::new(); simplices.len()];
        for (id, s) in simplices.iter().enumerate() {
            for i in 0..=s.dim() {
                if let Some(f) = s.facet(i) {
                    let fid = lookup[&f];
                    cofacets[fid].push(id);
                }
            }
        }
        for c in &mut cofacets {
            c.sort_unstable();
        }
        OrientedComplex {
            labels,
            simplices,
            dim_offsets,
            lookup,
            cofacets,
        }
    }

    /// Convenience constructor from integer facets over vertices `0..n`.
    pub fn from_index_facets(n: usize, facets: &[&[usize]]) -> Self {
        let labels = (0..n).map(Label::from).collect();
        let simplices = facets.iter().map(|f| Simplex::new(f.to_vec()).expect("valid facet"));
        Self::from_simplices(labels, simplices)
    }

    pub fn empty() -> Self {
        Self::from_closed_set(Vec::new(), Vec::new())
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &Label {
        &self.labels[v]
    }

    pub fn vertex_index(&self, l: &Label) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }

    /// Number of declared vertices (including any that span no simplex).
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.last().map(Simplex::dim)
    }

    /// Number of chain degrees, `dim + 1` (zero for the empty complex).
    pub fn degrees(&self) -> usize {
        self.dim_offsets.len() - 1
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn ids_of_dim(&self, k: usize) -> Range<usize> {
        if k + 1 >= self.dim_offsets.len() {
            let n = self.simplices.len();
            return n..n;
        }
        self.dim_offsets[k]..self.dim_offsets[k + 1]
    }

    pub fn simplices_of_dim(&self, k: usize) -> &[Simplex] {
        &self.simplices[self.ids_of_dim(k)]
    }

    pub fn count(&self, k: usize) -> usize {
        self.ids_of_dim(k).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        (0..self.degrees()).map(|k| self.count(k)).collect()
    }

    pub fn simplex(&self, id: usize) -> &Simplex {
        &self.simplices[id]
    }

    pub fn id_of(&self, s: &Simplex) -> Option<usize> {
        self.lookup.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.lookup.contains_key(s)
    }

    /// Flat id of a simplex given by vertex indices.
    pub fn id_of_vertices(&self, v: &[usize]) -> Option<usize> {
        Simplex::new(v.to_vec()).ok().and_then(|s| self.id_of(&s))
    }

    /// Position of `id` among the simplices of its dimension.
    pub fn index_in_dim(&self, id: usize) -> usize {
        id - self.dim_offsets[self.simplices[id].dim()]
    }

    /// Flat ids of the simplices of dimension `dim + 1` containing `id`.
    pub fn cofacets(&self, id: usize) -> &[usize] {
        &self.cofacets[id]
    }

    /// `(i, facet id)` for each facet of `id`, where the facet drops vertex `i`.
    pub fn facets_of(&self, id: usize) -> Vec<(usize, usize)> {
        let s = &self.simplices[id];
        if s.dim() == 0 {
            return Vec::new();
        }
        (0..=s.dim()).map(|i| (i, self.lookup[&s.facet(i).unwrap()])).collect()
    }

    /// `|face : tau|`: `(-1)^i` if `face` is the `i`-th facet of `tau`.
    pub fn incidence(&self, face: usize, tau: usize) -> i64 {
        let f = &self.simplices[face];
        let t = &self.simplices[tau];
        if t.dim() != f.dim() + 1 || !f.is_face_of(t) {
            return 0;
        }
        let i = (0..=t.dim()).find(|&i| !f.contains_vertex(t.vertices()[i])).unwrap();
        if i % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All `tau >= sigma`, including `sigma`, in flat-id order.
    pub fn cofaces(&self, id: usize) -> Vec<usize> {
        let mut out = BTreeSet::new();
        let mut stack = vec![id];
        while let Some(s) = stack.pop() {
            if out.insert(s) {
                stack.extend(self.cofacets[s].iter().copied());
            }
        }
        out.into_iter().collect()
    }

    pub fn is_maximal(&self, id: usize) -> bool {
        self.cofacets[id].is_empty()
    }

    pub fn maximal_simplices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_maximal(i)).collect()
    }

    /// Every maximal simplex has dimension `dim`.
    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.maximal_simplices()
            .iter()
            .all(|&i| Some(self.simplices[i].dim()) == d)
    }

    /// Vertices that span a 0-simplex.
    pub fn used_vertices(&self) -> Vec<usize> {
        self.simplices_of_dim(0).iter().map(|s| s.vertices()[0]).collect()
    }

    pub fn display_simplex(&self, s: &Simplex) -> String {
        let names: Vec<String> = s.vertices().iter().map(|&v| self.labels[v].to_string()).collect();
        format!("[{}]", names.join(","))
    }

    pub fn simplex_labels(&self, s: &Simplex) -> Vec<Label> {
        s.vertices().iter().map(|&v| self.labels[v].clone()).collect()
    }

    /// Open star (all cofaces of `sigma`) and link of `sigma`.
    pub fn star_and_link(&self, sigma: &Simplex) -> Result<(Vec<Simplex>, OrientedComplex), ComplexError> {
        let id = self
            .id_of(sigma)
            .ok_or_else(|| ComplexError::NotInComplex(format!("{:?}", sigma.vertices())))?;
        let star: Vec<Simplex> = self
            .cofaces(id)
            .into_iter()
            .map(|t| self.simplices[t].clone())
            .collect();
        let link_simplices = star.iter().filter_map(|t| {
            let rest: Vec<usize> = t
                .vertices()
                .iter()
                .copied()
                .filter(|v| !sigma.contains_vertex(*v))
                .collect();
            (!rest.is_empty()).then(|| Simplex::from_sorted(rest))
        });
        let link = OrientedComplex::from_simplices(self.labels.clone(), link_simplices).compacted();
        Ok((star, link))
    }

    pub fn link(&self, sigma: &Simplex) -> Result<OrientedComplex, ComplexError> {
        self.star_and_link(sigma).map(|(_, l)| l)
    }

    /// Simplices all of whose vertices lie in `vertices`, over the same
    /// vertex order restricted to `vertices`.
    pub fn full_subcomplex(&self, vertices: &[usize]) -> OrientedComplex {
        let keep: BTreeSet<usize> = vertices.iter().copied().collect();
        let simplices = self
            .simplices
            .iter()
            .filter(|s| s.vertices().iter().all(|v| keep.contains(v)))
            .cloned()
            .collect();
        OrientedComplex::from_closed_set(self.labels.clone(), simplices).restricted_to(&keep)
    }

    /// Full subcomplex on the vertices not used by `l` (matched by label).
    pub fn vertex_complement(&self, l: &OrientedComplex) -> OrientedComplex {
        let excluded: BTreeSet<usize> = l
            .used_vertices()
            .iter()
            .filter_map(|&v| self.vertex_index(l.label(v)))
            .collect();
        let rest: Vec<usize> = self
            .used_vertices()
            .into_iter()
            .filter(|v| !excluded.contains(v))
            .collect();
        self.full_subcomplex(&rest)
    }

    /// Drops declared vertices that span no simplex, keeping the order.
    pub fn compacted(&self) -> OrientedComplex {
        let used: BTreeSet<usize> = self.used_vertices().into_iter().collect();
        self.restricted_to(&used)
    }

    /// Re-indexes onto the vertex subset `keep` (which must cover every simplex).
    fn restricted_to(&self, keep: &BTreeSet<usize>) -> OrientedComplex {
        let map: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let simplices = self
            .simplices
            .iter()
            .map(|s| Simplex::from_sorted(s.vertices().iter().map(|v| map[v]).collect()))
            .collect();
        OrientedComplex::from_closed_set(labels, simplices)
    }

    /// Same complex with vertex order `order`, given as old vertex indices
    /// listed in their new order.
    pub fn reoriented(&self, order: &[usize]) -> Result<OrientedComplex, ComplexError> {
        let n = self.labels.len();
        let mut new_pos = vec![usize::MAX; n];
        if order.len() != n {
            return Err(ComplexError::BadOrder);
        }
        for (i, &v) in order.iter().enumerate() {
            if v >= n || new_pos[v] != usize::MAX {
                return Err(ComplexError::BadOrder);
            }
            new_pos[v] = i;
        }
        let labels = order.iter().map(|&v| self.labels[v].clone()).collect();
        let simplices = self
            .simplices
            .iter()
            .map(|s| {
                let mut v: Vec<usize> = s.vertices().iter().map(|&x| new_pos[x]).collect();
                v.sort_unstable();
                Simplex::from_sorted(v)
            })
            .collect();
        Ok(OrientedComplex::from_closed_set(labels, simplices))
    }

    /// Applies a vertex relabelling (a bijection of vertex indices) while
    /// keeping the same orientation order on positions.
    pub fn relabelled(&self, labels: Vec<Label>) -> OrientedComplex {
        assert_eq!(labels.len(), self.labels.len());
        OrientedComplex::from_closed_set(labels, self.simplices.clone())
    }

    /// Same underlying complex with a new vertex *labelling*: vertex `v`
    /// becomes vertex `perm[v]`. Orientation follows the new indices.
    pub fn permuted(&self, perm: &[usize]) -> OrientedComplex {
        let simplices = self.simplices.iter().map(|s| {
            let mut v: Vec<usize> = s.vertices().iter().map(|&x| perm[x]).collect();
            v.sort_unstable();
            Simplex::from_sorted(v)
        });
        let mut labels = vec![Label::Int(0); self.labels.len()];
        for (v, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[v].clone();
        }
        OrientedComplex::from_closed_set(labels, simplices.collect())
    }

    /// Subcomplex generated by the given simplices of `self` (same labels).
    pub fn subcomplex(&self, generators: &[Simplex]) -> Result<OrientedComplex, ComplexError> {
        for g in generators {
            if !self.contains(g) {
                return Err(ComplexError::NotInComplex(self.display_simplex(g)));
            }
        }
        Ok(OrientedComplex::from_simplices(
            self.labels.clone(),
            generators.iter().cloned(),
        ))
    }

    /// Selection of the simplices of `self` that also occur in `other`
    /// (matched by vertex labels).
    pub fn selection_of(&self, other: &OrientedComplex) -> Result<Selection, ComplexError> {
        let mut mask = vec![false; self.len()];
        for s in other.simplices() {
            let mut v = Vec::with_capacity(s.vertices().len());
            for &x in s.vertices() {
                let l = other.label(x);
                v.push(
                    self.vertex_index(l)
                        .ok_or_else(|| ComplexError::UnknownVertex(l.to_string()))?,
                );
            }
            let id = self
                .id_of_vertices(&v)
                .ok_or_else(|| ComplexError::NotInComplex(other.display_simplex(s)))?;
            mask[id] = true;
        }
        Ok(Selection { mask })
    }

    /// Chain basis (flat ids by degree) of a selection.
    pub fn basis(&self, sel: &Selection) -> Vec<Vec<usize>> {
        (0..self.degrees())
            .map(|k| self.ids_of_dim(k).filter(|&i| sel.contains(i)).collect())
            .collect()
    }

    /// Simplicial chain complex of a locally closed selection: the quotient
    /// of the chains on the downward closure by those on its frontier.
    pub fn chain_complex_on(&self, sel: &Selection) -> (IntegerChainComplex, Vec<Vec<usize>>) {
        let basis = self.basis(sel);
        let pos = positions(&basis, self.len());
        let mut boundaries = Vec::with_capacity(basis.len());
        for k in 0..basis.len() {
            let rows = if k == 0 { 0 } else { basis[k - 1].len() };
            let mut d = IntMatrix::zeros(rows, basis[k].len());
            if k > 0 {
                for (j, &id) in basis[k].iter().enumerate() {
                    for (i, f) in self.facets_of(id) {
                        if let Some(r) = pos[f] {
                            d.set(r, j, BigInt::from(if i % 2 == 0 { 1 } else { -1 }));
                        }
                    }
                }
            }
            boundaries.push(d);
        }
        let c = IntegerChainComplex::new(boundaries).expect("simplicial boundary squares to zero");
        (c, basis)
    }

    pub fn chain_complex(&self) -> IntegerChainComplex {
        self.chain_complex_on(&Selection::all(self)).0
    }

    pub fn homology(&self) -> GradedGroups {
        GradedGroups::from_nonnegative(self.chain_complex().homology())
    }

    pub fn cohomology(&self) -> GradedGroups {
        GradedGroups::from_nonnegative(self.chain_complex().dual().cohomology())
    }

    /// Chain complex augmented by `C_{-1} = Z`, stored shifted up by one.
    pub fn augmented_chain_complex(&self) -> IntegerChainComplex {
        let c = self.chain_complex();
        let mut boundaries = vec![IntMatrix::zeros(0, 1)];
        boundaries.push(IntMatrix::from_fn(1, self.count(0), |_, _| BigInt::from(1)));
        boundaries.extend(c.boundaries().iter().skip(1).cloned());
        IntegerChainComplex::new(boundaries).expect("augmented complex")
    }

    /// Reduced homology, starting in degree -1 (nonzero there only for the
    /// empty complex).
    pub fn reduced_homology(&self) -> GradedGroups {
        GradedGroups::new(-1, self.augmented_chain_complex().homology())
    }

    pub fn reduced_cohomology(&self) -> GradedGroups {
        GradedGroups::new(-1, self.augmented_chain_complex().dual().cohomology())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Connected components of the 1-skeleton, as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let verts = self.used_vertices();
        let mut parent: HashMap<usize, usize> = verts.iter().map(|&v| (v, v)).collect();
        fn find(p: &mut HashMap<usize, usize>, x: usize) -> usize {
            let mut r = x;
            while p[&r] != r {
                r = p[&r];
            }
            let mut y = x;
            while p[&y] != r {
                let next = p[&y];
                p.insert(y, r);
                y = next;
            }
            r
        }
        for e in self.simplices_of_dim(1) {
            let a = find(&mut parent, e.vertices()[0]);
            let b = find(&mut parent, e.vertices()[1]);
            if a != b {
                parent.insert(a.max(b), a.min(b));
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for &v in &verts {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }
}

/// Position of each flat id within its degree's basis, if selected.
pub(crate) fn positions(basis: &[Vec<usize>], total: usize) -> Vec<Option<usize>> {
    let mut pos = vec![None; total];
    for b in basis {
        for (i, &id) in b.iter().enumerate() {
            pos[id] = Some(i);
        }
    }
    pos
}

/// A subset of the simplices of a complex, addressed by flat id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    mask: Vec<bool>,
}

impl Selection {
    pub fn all(x: &OrientedComplex) -> Self {
        Self {
            mask: vec![true; x.len()],
        }
    }

    pub fn none(x: &OrientedComplex) -> Self {
        Self {
            mask: vec![false; x.len()],
        }
    }

    pub fn from_fn(x: &OrientedComplex, f: impl Fn(usize) -> bool) -> Self {
        Self {
            mask: (0..x.len()).map(f).collect(),
        }
    }

    /// The open star of `id`: all simplices containing it.
    pub fn open_star(x: &OrientedComplex, id: usize) -> Self {
        let s = x.simplex(id).clone();
        Self::from_fn(x, |t| s.is_face_of(x.simplex(t)))
    }

    /// Simplices with every vertex in `vertices` (a full subcomplex).
    pub fn spanned_by(x: &OrientedComplex, vertices: &[usize]) -> Self {
        let keep: BTreeSet<usize> = vertices.iter().copied().collect();
        Self::from_fn(x, |t| x.simplex(t).vertices().iter().all(|v| keep.contains(v)))
    }

    pub fn contains(&self, id: usize) -> bool {
        self.mask[id]
    }

    pub fn complement(&self) -> Self {
        Self {
            mask: self.mask.iter().map(|b| !b).collect(),
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Self {
            mask: self.mask.iter().zip(&other.mask).map(|(a, b)| *a && *b).collect(),
        }
    }

    pub fn ids(&self) -> Vec<usize> {
        (0..self.mask.len()).filter(|&i| self.mask[i]).collect()
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.mask.iter().zip(&other.mask).all(|(a, b)| !*a || *b)
    }

    /// Closed under taking faces (a subcomplex).
    pub fn is_downward_closed(&self, x: &OrientedComplex) -> bool {
        (0..x.len()).all(|id| !self.mask[id] || x.facets_of(id).iter().all(|&(_, f)| self.mask[f]))
    }

    /// Closed under taking cofaces.
    pub fn is_upward_closed(&self, x: &OrientedComplex) -> bool {
        (0..x.len()).all(|id| !self.mask[id] || x.cofacets(id).iter().all(|&t| self.mask[t]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn labels(v: &[i64]) -> Vec<Label> {
        v.iter().map(|&x| Label::Int(x)).collect()
    }

    #[test]
    fn triangle_closure_has_seven_simplices() {
        let (x, w) = build_complex(&labels(&[0, 1, 2]), &[labels(&[0, 1, 2])]).unwrap();
        assert!(w.is_empty());
        assert_eq!(x.len(), 7);
        assert_eq!(x.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn empty_complex_has_no_dimension() {
        let (x, _) = build_complex(&[], &[]).unwrap();
        assert!(x.is_empty());
        assert_eq!(x.dim(), None);
        assert_eq!(x.reduced_homology().get(-1), crate::FgAbelianGroup::free(1));
    }

    #[test]
    fn s2_f_vector() {
        assert_eq!(fixtures::s2().f_vector(), vec![4, 6, 4]);
    }

    #[test]
    fn build_errors() {
        let v = labels(&[0, 1, 2]);
        assert_eq!(
            build_complex(&v, &[labels(&[0, 0, 1])]).unwrap_err(),
            ComplexError::RepeatedVertex("0".into())
        );
        assert_eq!(
            build_complex(&v, &[labels(&[0, 5])]).unwrap_err(),
            ComplexError::UnknownVertex("5".into())
        );
    }

    #[test]
    fn contained_facet_warns() {
        let v = labels(&[0, 1, 2]);
        let (x, w) = build_complex(&v, &[labels(&[0, 1, 2]), labels(&[0, 1])]).unwrap();
        assert_eq!(x.len(), 7);
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn link_of_s2_vertex_is_three_cycle() {
        let x = fixtures::s2();
        let (star, link) = x.star_and_link(&Simplex::new(vec![0]).unwrap()).unwrap();
        assert_eq!(star.len(), 1 + 3 + 3);
        assert_eq!(link.f_vector(), vec![3, 3]);
        assert_eq!(link.labels(), &labels(&[1, 2, 3])[..]);
    }

    #[test]
    fn link_of_maximal_simplex_is_empty() {
        let x = fixtures::triangle();
        let (star, link) = x.star_and_link(&Simplex::new(vec![0, 1, 2]).unwrap()).unwrap();
        assert_eq!(star.len(), 1);
        assert!(link.is_empty());
    }

    #[test]
    fn k4_vertex_link_is_three_points() {
        let x = fixtures::k4();
        let link = x.link(&Simplex::new(vec![2]).unwrap()).unwrap();
        assert_eq!(link.f_vector(), vec![3]);
    }

    #[test]
    fn not_in_complex() {
        let x = fixtures::triangle();
        assert!(x.star_and_link(&Simplex::new(vec![0, 7]).unwrap()).is_err());
    }

    #[test]
    fn full_subcomplexes_of_s2() {
        let x = fixtures::s2();
        let t = x.full_subcomplex(&[0, 1, 2]);
        assert_eq!(t.f_vector(), vec![3, 3, 1]);
        assert_eq!(x.full_subcomplex(&[0, 1, 2, 3]), x);
        let l = x.full_subcomplex(&[0]);
        let vc = x.vertex_complement(&l);
        assert_eq!(vc.f_vector(), vec![3, 3, 1]);
        assert_eq!(vc.labels(), &labels(&[1, 2, 3])[..]);
        assert!(x.full_subcomplex(&[]).is_empty());
    }

    #[test]
    fn face_split_examples() {
        let s = Simplex::new(vec![0, 1, 2]).unwrap();
        let sx = |v: &[usize]| Simplex::new(v.to_vec()).unwrap();
        assert_eq!(s.face_split(1).unwrap(), (sx(&[0, 1]), sx(&[1, 2])));
        assert_eq!(s.face_split(0).unwrap(), (s.clone(), sx(&[2])));
        assert_eq!(s.face_split(2).unwrap(), (sx(&[0]), s.clone()));
        assert!(s.face_split(3).is_err());
    }

    #[test]
    fn incidence_signs() {
        let x = fixtures::triangle();
        let t = x.id_of_vertices(&[0, 1, 2]).unwrap();
        assert_eq!(x.incidence(x.id_of_vertices(&[1, 2]).unwrap(), t), 1);
        assert_eq!(x.incidence(x.id_of_vertices(&[0, 2]).unwrap(), t), -1);
        assert_eq!(x.incidence(x.id_of_vertices(&[0, 1]).unwrap(), t), 1);
    }

    #[test]
    fn reorient_preserves_homology() {
        let x = fixtures::rp6();
        let y = x.reoriented(&[5, 3, 1, 0, 2, 4]).unwrap();
        assert_eq!(x.homology(), y.homology());
        assert_eq!(y.label(0), x.label(5));
    }
}
