//! Finite posets and the constructions built on them: order complexes,
//! chain posets, intervals, joins, link-join decompositions, monotone
//! retractions, fiber reports and thickened spines.
//!
//! Homotopy statements are certified only through integral homology of
//! order complexes; reports carry that label explicitly.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::GradedGroups;
use crate::complex::{Label, OrientedComplex, Simplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("element {0} declared twice")]
    DuplicateElement(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("covers contain a cycle: {}", .0.join(" < "))]
    Cycle(Vec<String>),
    #[error("cover {0} < {1} is implied by transitivity")]
    RedundantCover(String, String),
    #[error("{0} is not below {1}")]
    NotBelow(String, String),
    #[error("elements {0} and {1} are incomparable, so the set is not a chain")]
    NotAChain(String, String),
    #[error("map is not order preserving: {0} < {1} but images are not related")]
    NotMonotone(String, String),
    #[error("map is not idempotent at {0}")]
    NotIdempotent(String),
    #[error("map is neither below nor above the identity (witness {0})")]
    NotComparableToIdentity(String),
    #[error("subset is not upward closed: {0} is in it but {1} > {0} is not")]
    NotUpwardClosed(String, String),
    #[error("subset is empty")]
    EmptySubset,
    #[error("map has length {got}, expected {expected}")]
    BadMapLength { got: usize, expected: usize },
}

/// A finite partially ordered set stored by its Hasse diagram and the full
/// strict order relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<Label>,
    covers: Vec<(usize, usize)>,
    less: Vec<Vec<bool>>,
}

/// A subposet together with the indices of its elements in the parent.
#[derive(Clone, Debug)]
pub struct Subposet {
    pub poset: FinitePoset,
    pub elements: Vec<usize>,
}

/// The poset of nonempty chains of a poset, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct ChainPoset {
    pub poset: FinitePoset,
    /// Each chain as parent indices, increasing in the parent order.
    pub chains: Vec<Vec<usize>>,
}

impl ChainPoset {
    pub fn index_of(&self, chain: &[usize]) -> Option<usize> {
        self.chains.iter().position(|c| c == chain)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalKind {
    /// Elements strictly below `p`.
    Below,
    /// Elements strictly above `p`.
    Above,
    /// Elements strictly between `p` and `q`.
    Open,
}

impl FinitePoset {
    /// Builds a poset from its covering pairs `(a, b)` meaning `a < b`.
    pub fn from_covers(labels: Vec<Label>, covers: &[(usize, usize)]) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(l.to_string()));
            }
        }
        let mut up = vec![Vec::new(); n];
        for &(a, b) in covers {
            if a >= n {
                return Err(PosetError::UnknownElement(a.to_string()));
            }
            if b >= n {
                return Err(PosetError::UnknownElement(b.to_string()));
            }
            up[a].push(b);
        }
        if let Some(cycle) = find_cycle(&up) {
            return Err(PosetError::Cycle(
                cycle.iter().map(|&i| labels[i].to_string()).collect(),
            ));
        }
        let less = transitive_closure(&up);
        let mut cover_set: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &(a, b) in covers {
            if (0..n).any(|c| less[a][c] && less[c][b]) {
                return Err(PosetError::RedundantCover(labels[a].to_string(), labels[b].to_string()));
            }
            cover_set.insert((a, b));
        }
        Ok(Self {
            labels,
            covers: cover_set.into_iter().collect(),
            less,
        })
    }

    pub fn from_labelled_covers(labels: Vec<Label>, covers: &[(Label, Label)]) -> Result<Self, PosetError> {
        let index: HashMap<&Label, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            let i = *index.get(a).ok_or_else(|| PosetError::UnknownElement(a.to_string()))?;
            let j = *index.get(b).ok_or_else(|| PosetError::UnknownElement(b.to_string()))?;
            pairs.push((i, j));
        }
        Self::from_covers(labels, &pairs)
    }

    /// Builds a poset from a strict order relation, which must be
    /// irreflexive and transitive.
    pub fn from_relation(labels: Vec<Label>, lt: impl Fn(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let less: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| a != b && lt(a, b)).collect()).collect();
        debug_assert!((0..n).all(|a| (0..n).all(|b| !(less[a][b] && less[b][a]))));
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if less[a][b] && !(0..n).any(|c| less[a][c] && less[c][b]) {
                    covers.push((a, b));
                }
            }
        }
        Self { labels, covers, less }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, p: usize) -> &Label {
        &self.labels[p]
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Strict order `a < b`.
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.less[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.le(b, a)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| !(0..self.len()).any(|a| self.lt(a, b)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| !(0..self.len()).any(|b| self.lt(a, b)))
            .collect()
    }

    /// Topological sort choosing the smallest label among the available
    /// minimal elements at every step.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut indegree = vec![0usize; n];
        for &(_, b) in &self.covers {
            indegree[b] += 1;
        }
        let mut available: BTreeSet<(&Label, usize)> = (0..n)
            .filter(|&i| indegree[i] == 0)
            .map(|i| (&self.labels[i], i))
            .collect();
        let mut out = Vec::with_capacity(n);
        while let Some(&first) = available.iter().next() {
            available.remove(&first);
            let a = first.1;
            out.push(a);
            for &(x, b) in &self.covers {
                if x == a {
                    indegree[b] -= 1;
                    if indegree[b] == 0 {
                        available.insert((&self.labels[b], b));
                    }
                }
            }
        }
        out
    }

    /// Sorts a set of pairwise comparable elements increasingly; errors
    /// with an incomparable pair otherwise.
    pub fn as_chain(&self, elements: &[usize]) -> Result<Vec<usize>, PosetError> {
        let mut c = elements.to_vec();
        c.sort_unstable();
        c.dedup();
        for (i, &a) in c.iter().enumerate() {
            for &b in &c[i + 1..] {
                if !self.comparable(a, b) {
                    return Err(PosetError::NotAChain(
                        self.labels[a].to_string(),
                        self.labels[b].to_string(),
                    ));
                }
            }
        }
        c.sort_by(|&a, &b| {
            if self.lt(a, b) {
                std::cmp::Ordering::Less
            } else if self.lt(b, a) {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        });
        Ok(c)
    }

    /// All maximal chains, each increasing.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut up = vec![Vec::new(); self.len()];
        for &(a, b) in &self.covers {
            up[a].push(b);
        }
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = self.minimal_elements().into_iter().map(|m| vec![m]).collect();
        while let Some(c) = stack.pop() {
            let last = *c.last().unwrap();
            if up[last].is_empty() {
                out.push(c);
            } else {
                for &b in &up[last] {
                    let mut d = c.clone();
                    d.push(b);
                    stack.push(d);
                }
            }
        }
        out.sort();
        out
    }

    /// All nonempty chains, each increasing, sorted by length then lexicographically.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let mut all = BTreeSet::new();
        for m in self.maximal_chains() {
            let k = m.len();
            for mask in 1u64..(1 << k) {
                let c: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| m[i]).collect();
                all.insert(c);
            }
        }
        let mut v: Vec<Vec<usize>> = all.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    /// Order complex with vertices in [`FinitePoset::linear_extension`] order.
    pub fn order_complex(&self) -> OrientedComplex {
        let ext = self.linear_extension();
        let mut pos = vec![0; self.len()];
        for (i, &p) in ext.iter().enumerate() {
            pos[p] = i;
        }
        let labels = ext.iter().map(|&p| self.labels[p].clone()).collect();
        let simplices = self.maximal_chains().into_iter().map(|c| {
            let mut v: Vec<usize> = c.iter().map(|&p| pos[p]).collect();
            v.sort_unstable();
            Simplex::from_sorted(v)
        });
        OrientedComplex::from_simplices(labels, simplices)
    }

    pub fn homology(&self) -> GradedGroups {
        self.order_complex().homology()
    }

    pub fn reduced_homology(&self) -> GradedGroups {
        self.order_complex().reduced_homology()
    }

    /// Induced subposet on `elements` (in the given order).
    pub fn subposet(&self, elements: &[usize]) -> Subposet {
        let labels = elements.iter().map(|&p| self.labels[p].clone()).collect();
        let poset = FinitePoset::from_relation(labels, |a, b| self.lt(elements[a], elements[b]));
        Subposet {
            poset,
            elements: elements.to_vec(),
        }
    }

    /// `<p`, `p_<` or `(p, q)` as a subposet.
    pub fn interval(&self, kind: IntervalKind, p: usize, q: Option<usize>) -> Result<Subposet, PosetError> {
        let n = self.len();
        if p >= n {
            return Err(PosetError::UnknownElement(p.to_string()));
        }
        let elements: Vec<usize> = match kind {
            IntervalKind::Below => (0..n).filter(|&x| self.lt(x, p)).collect(),
            IntervalKind::Above => (0..n).filter(|&x| self.lt(p, x)).collect(),
            IntervalKind::Open => {
                let q = q.ok_or_else(|| PosetError::UnknownElement("upper endpoint".into()))?;
                if q >= n {
                    return Err(PosetError::UnknownElement(q.to_string()));
                }
                if !self.lt(p, q) {
                    return Err(PosetError::NotBelow(
                        self.labels[p].to_string(),
                        self.labels[q].to_string(),
                    ));
                }
                (0..n).filter(|&x| self.lt(p, x) && self.lt(x, q)).collect()
            }
        };
        Ok(self.subposet(&elements))
    }

    /// Number of elements in a longest chain strictly below `p`.
    pub fn height(&self, p: usize) -> usize {
        let mut memo = vec![None; self.len()];
        self.height_memo(p, &mut memo)
    }

    fn height_memo(&self, p: usize, memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(h) = memo[p] {
            return h;
        }
        let h = self
            .covers
            .iter()
            .filter(|&&(_, b)| b == p)
            .map(|&(a, _)| 1 + self.height_memo(a, memo))
            .max()
            .unwrap_or(0);
        memo[p] = Some(h);
        h
    }

    /// Join `P * Q`: disjoint union with every element of `P` below every
    /// element of `Q`.
    pub fn join(&self, other: &FinitePoset) -> FinitePoset {
        let n = self.len();
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        FinitePoset::from_relation(labels, |a, b| match (a < n, b < n) {
            (true, true) => self.lt(a, b),
            (false, false) => other.lt(a - n, b - n),
            (true, false) => true,
            (false, true) => false,
        })
    }

    /// Poset of nonempty chains ordered by inclusion.
    pub fn chain_poset(&self) -> ChainPoset {
        let chains = self.chains();
        let labels: Vec<Label> = chains
            .iter()
            .map(|c| {
                let parts: Vec<String> = c.iter().map(|&p| self.labels[p].to_string()).collect();
                Label::Str(parts.join("<"))
            })
            .collect();
        let sets: Vec<BTreeSet<usize>> = chains.iter().map(|c| c.iter().copied().collect()).collect();
        let n = chains.len();
        let less: Vec<Vec<bool>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| sets[a].len() < sets[b].len() && sets[a].is_subset(&sets[b]))
                    .collect()
            })
            .collect();
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if less[a][b] && sets[b].len() == sets[a].len() + 1 {
                    covers.push((a, b));
                }
            }
        }
        ChainPoset {
            poset: FinitePoset { labels, covers, less },
            chains,
        }
    }

    pub fn is_upward_closed(&self, subset: &[usize]) -> Result<(), PosetError> {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        for &p in &set {
            for q in 0..self.len() {
                if self.lt(p, q) && !set.contains(&q) {
                    return Err(PosetError::NotUpwardClosed(
                        self.labels[p].to_string(),
                        self.labels[q].to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Checks that `f` (given on indices) preserves the order into `target`.
    pub fn check_monotone(&self, target: &FinitePoset, f: &[usize]) -> Result<(), PosetError> {
        if f.len() != self.len() {
            return Err(PosetError::BadMapLength {
                got: f.len(),
                expected: self.len(),
            });
        }
        if let Some(&bad) = f.iter().find(|&&y| y >= target.len()) {
            return Err(PosetError::UnknownElement(bad.to_string()));
        }
        for &(a, b) in &self.covers {
            if !target.le(f[a], f[b]) {
                return Err(PosetError::NotMonotone(
                    self.labels[a].to_string(),
                    self.labels[b].to_string(),
                ));
            }
        }
        Ok(())
    }
}

fn find_cycle(up: &[Vec<usize>]) -> Option<Vec<usize>> {
    // 0 = unvisited, 1 = on stack, 2 = done
    let n = up.len();
    let mut state = vec![0u8; n];
    let mut parent = vec![usize::MAX; n];
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        state[start] = 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < up[v].len() {
                let w = up[v][*i];
                *i += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                    1 => {
                        let mut cycle = vec![v];
                        let mut x = v;
                        while x != w {
                            x = parent[x];
                            cycle.push(x);
                        }
                        cycle.reverse();
                        cycle.push(w);
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

fn transitive_closure(up: &[Vec<usize>]) -> Vec<Vec<bool>> {
    let n = up.len();
    let mut less = vec![vec![false; n]; n];
    for a in 0..n {
        let mut stack: Vec<usize> = up[a].clone();
        while let Some(b) = stack.pop() {
            if !less[a][b] {
                less[a][b] = true;
                stack.extend(up[b].iter().copied());
            }
        }
    }
    less
}

/// Decomposition of the link of a chain in the order complex as a join of
/// intervals.
#[derive(Clone, Debug)]
pub struct LinkJoin {
    pub chain: Vec<usize>,
    pub factors: Vec<Subposet>,
    pub join: FinitePoset,
    pub link: OrientedComplex,
    /// The order complex of the join equals the link, matching vertices by label.
    pub isomorphic: bool,
}

/// Factors `<p_0, (p_0,p_1), ..., (p_{k-1},p_k), (p_k)_<` of the link of the
/// chain `p_0 < ... < p_k`, their join, and the isomorphism check.
pub fn link_join_decomposition(p: &FinitePoset, chain: &[usize]) -> Result<LinkJoin, PosetError> {
    if chain.is_empty() {
        return Err(PosetError::EmptySubset);
    }
    let c = p.as_chain(chain)?;
    let mut factors = vec![p.interval(IntervalKind::Below, c[0], None)?];
    for w in c.windows(2) {
        factors.push(p.interval(IntervalKind::Open, w[0], Some(w[1]))?);
    }
    factors.push(p.interval(IntervalKind::Above, *c.last().unwrap(), None)?);
    let mut join = FinitePoset::from_relation(Vec::new(), |_, _| false);
    for f in &factors {
        join = join.join(&f.poset);
    }
    let oc = p.order_complex();
    let vertices: Vec<usize> = c
        .iter()
        .map(|&e| oc.vertex_index(p.label(e)).expect("element is a vertex"))
        .collect();
    let sigma = Simplex::new(vertices).expect("chain elements are distinct");
    let link = oc.link(&sigma).expect("chains are simplices");
    let isomorphic = simplex_label_sets(&link) == simplex_label_sets(&join.order_complex());
    Ok(LinkJoin {
        chain: c,
        factors,
        join,
        link,
        isomorphic,
    })
}

fn simplex_label_sets(x: &OrientedComplex) -> BTreeSet<BTreeSet<Label>> {
    x.simplices()
        .iter()
        .map(|s| x.simplex_labels(s).into_iter().collect())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RetractionDirection {
    /// `r(p) <= p` for every `p`.
    Down,
    /// `r(p) >= p` for every `p`.
    Up,
}

/// Outcome of checking a monotone retraction.
#[derive(Clone, Debug, Serialize)]
pub struct RetractionReport {
    pub direction: RetractionDirection,
    #[serde(skip)]
    pub image: Subposet,
    pub image_elements: Vec<String>,
    pub homology: GradedGroups,
    pub image_homology: GradedGroups,
    /// Equality of integral homology, the checkable shadow of a homotopy equivalence.
    pub homology_equivalent: bool,
    pub certificate: &'static str,
}

pub const HOMOLOGY_ONLY: &str = "integral homology only; homotopy type not certified";

/// Validates `r` as a monotone retraction and compares homology of `P` and `r(P)`.
pub fn monotone_retraction(p: &FinitePoset, r: &[usize]) -> Result<RetractionReport, PosetError> {
    p.check_monotone(p, r)?;
    for x in 0..p.len() {
        if r[r[x]] != r[x] {
            return Err(PosetError::NotIdempotent(p.label(x).to_string()));
        }
    }
    let direction = if (0..p.len()).all(|x| p.le(r[x], x)) {
        RetractionDirection::Down
    } else if (0..p.len()).all(|x| p.le(x, r[x])) {
        RetractionDirection::Up
    } else {
        let w = (0..p.len()).find(|&x| !p.le(r[x], x)).unwrap();
        return Err(PosetError::NotComparableToIdentity(p.label(w).to_string()));
    };
    let image_idx: Vec<usize> = (0..p.len()).filter(|&x| r[x] == x).collect();
    let image = p.subposet(&image_idx);
    let homology = p.homology();
    let image_homology = image.poset.homology();
    Ok(RetractionReport {
        direction,
        image_elements: image.poset.labels().iter().map(ToString::to_string).collect(),
        homology_equivalent: homology == image_homology,
        homology,
        image_homology,
        image,
        certificate: HOMOLOGY_ONLY,
    })
}

/// Acyclicity of one fiber.
#[derive(Clone, Debug, Serialize)]
pub struct FiberEntry {
    pub element: String,
    pub size: usize,
    pub reduced_homology: GradedGroups,
    pub acyclic: bool,
}

/// Fiber acyclicity for a poset map `f: P -> Q`.
#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    /// Fibers `f^{-1}(Q_{>=q})`.
    pub upper_fibers: Vec<FiberEntry>,
    /// Fibers `f^{-1}(Q_{<=q})`.
    pub lower_fibers: Vec<FiberEntry>,
    pub all_upper_acyclic: bool,
    pub all_lower_acyclic: bool,
    pub source_homology: GradedGroups,
    pub target_homology: GradedGroups,
    pub homology_equal: bool,
    pub certificate: &'static str,
}

/// Acyclicity is strictly weaker than contractibility; the report says so.
pub const ACYCLIC_ONLY: &str = "fibers certified Z-acyclic (weaker than contractible)";

pub fn quillen_fiber_report(p: &FinitePoset, q: &FinitePoset, f: &[usize]) -> Result<FiberReport, PosetError> {
    p.check_monotone(q, f)?;
    let fiber = |pred: &dyn Fn(usize) -> bool, y: usize| -> FiberEntry {
        let elems: Vec<usize> = (0..p.len()).filter(|&x| pred(f[x])).collect();
        let sub = p.subposet(&elems);
        let reduced_homology = sub.poset.reduced_homology();
        FiberEntry {
            element: q.label(y).to_string(),
            size: elems.len(),
            acyclic: reduced_homology.is_acyclic(),
            reduced_homology,
        }
    };
    let upper_fibers: Vec<FiberEntry> = (0..q.len()).map(|y| fiber(&|z| q.le(y, z), y)).collect();
    let lower_fibers: Vec<FiberEntry> = (0..q.len()).map(|y| fiber(&|z| q.le(z, y), y)).collect();
    let source_homology = p.homology();
    let target_homology = q.homology();
    Ok(FiberReport {
        all_upper_acyclic: upper_fibers.iter().all(|e| e.acyclic),
        all_lower_acyclic: lower_fibers.iter().all(|e| e.acyclic),
        upper_fibers,
        lower_fibers,
        homology_equal: source_homology == target_homology,
        source_homology,
        target_homology,
        certificate: ACYCLIC_ONLY,
    })
}

/// Chains of `P` whose maximum lies in an upward-closed subset `S`, with
/// the boundary (chains whose minimum lies outside `S`) and the retraction
/// `chi(c) = c ∩ S`.
#[derive(Clone, Debug)]
pub struct ThickenedSpine {
    pub spine: Vec<usize>,
    pub chains: ChainPoset,
    /// `L` as a subposet of the chain poset.
    pub thickened: Subposet,
    /// Indices into `thickened` of the boundary chains.
    pub boundary: Vec<usize>,
    /// `chi` on indices of `thickened`.
    pub chi: Vec<usize>,
}

/// Structural checks on a thickened spine.
#[derive(Clone, Debug, Serialize)]
pub struct SpineReport {
    pub size: usize,
    pub boundary_size: usize,
    pub chi_retraction_valid: bool,
    pub chi_image_is_spine_chains: bool,
    pub heights_match_chain_length: bool,
    pub thickened_homology: GradedGroups,
    pub spine_homology: GradedGroups,
    pub boundary_homology: GradedGroups,
    pub homology_equivalent: bool,
    pub certificate: &'static str,
}

pub fn thickened_spine(p: &FinitePoset, spine: &[usize]) -> Result<ThickenedSpine, PosetError> {
    if spine.is_empty() {
        return Err(PosetError::EmptySubset);
    }
    p.is_upward_closed(spine)?;
    let s: BTreeSet<usize> = spine.iter().copied().collect();
    let chains = p.chain_poset();
    let l_idx: Vec<usize> = (0..chains.chains.len())
        .filter(|&i| s.contains(chains.chains[i].last().unwrap()))
        .collect();
    let thickened = chains.poset.subposet(&l_idx);
    let boundary = (0..l_idx.len())
        .filter(|&i| !s.contains(&chains.chains[l_idx[i]][0]))
        .collect();
    let chi = l_idx
        .iter()
        .map(|&i| {
            let sub: Vec<usize> = chains.chains[i].iter().copied().filter(|x| s.contains(x)).collect();
            let j = chains.index_of(&sub).expect("subchains are chains");
            l_idx.iter().position(|&k| k == j).expect("spine chains lie in L")
        })
        .collect();
    Ok(ThickenedSpine {
        spine: s.into_iter().collect(),
        chains,
        thickened,
        boundary,
        chi,
    })
}

impl ThickenedSpine {
    pub fn chain(&self, i: usize) -> &[usize] {
        &self.chains.chains[self.thickened.elements[i]]
    }

    pub fn verify(&self, p: &FinitePoset) -> SpineReport {
        let l = &self.thickened.poset;
        let retraction = monotone_retraction(l, &self.chi);
        let chi_retraction_valid = matches!(&retraction, Ok(r) if r.direction == RetractionDirection::Down);
        let s: BTreeSet<usize> = self.spine.iter().copied().collect();
        let image: BTreeSet<usize> = self.chi.iter().copied().collect();
        let spine_chains: BTreeSet<usize> = (0..l.len())
            .filter(|&i| self.chain(i).iter().all(|x| s.contains(x)))
            .collect();
        let heights_match_chain_length = (0..l.len()).all(|i| {
            let len = self.chain(i).len();
            l.height(i) == len - 1 && self.chains.poset.height(self.thickened.elements[i]) == len - 1
        });
        let thickened_homology = l.homology();
        let spine_homology = p.subposet(&self.spine).poset.homology();
        let boundary_homology = l.subposet(&self.boundary).poset.homology();
        SpineReport {
            size: l.len(),
            boundary_size: self.boundary.len(),
            chi_retraction_valid,
            chi_image_is_spine_chains: image == spine_chains,
            heights_match_chain_length,
            homology_equivalent: thickened_homology == spine_homology,
            thickened_homology,
            spine_homology,
            boundary_homology,
            certificate: HOMOLOGY_ONLY,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::FgAbelianGroup;

    fn antichain(n: usize) -> FinitePoset {
        FinitePoset::from_covers((0..n).map(Label::from).collect(), &[]).unwrap()
    }

    #[test]
    fn antichain_order_complex_is_points() {
        let x = antichain(3).order_complex();
        assert_eq!(x.f_vector(), vec![3]);
    }

    #[test]
    fn subsets_order_complex_is_subdivided_triangle() {
        let x = fixtures::subsets_poset(3).order_complex();
        assert_eq!(x.f_vector(), vec![7, 12, 6]);
        assert!(x.reduced_homology().is_acyclic());
    }

    #[test]
    fn chain_poset_of_cover_pair() {
        let p = fixtures::chain_poset_of_length(2);
        let cp = p.chain_poset();
        assert_eq!(cp.chains, vec![vec![0], vec![1], vec![0, 1]]);
        assert_eq!(cp.poset.order_complex().f_vector(), vec![3, 2]);
        assert_eq!(antichain(2).chain_poset().poset.covers().len(), 0);
    }

    #[test]
    fn chain_poset_of_face_poset_is_circle() {
        let p = fixtures::triangle_face_poset().chain_poset().poset;
        let h = p.homology();
        assert_eq!(h.get(0), FgAbelianGroup::free(1));
        assert_eq!(h.get(1), FgAbelianGroup::free(1));
    }

    #[test]
    fn intervals() {
        let p = fixtures::subsets_poset(3);
        let one = p.index_of(&"1".into()).unwrap();
        assert_eq!(p.interval(IntervalKind::Above, one, None).unwrap().poset.len(), 3);
        let top = p.index_of(&"123".into()).unwrap();
        assert!(p.interval(IntervalKind::Above, top, None).unwrap().poset.is_empty());
        let c = fixtures::chain_poset_of_length(3);
        let open = c.interval(IntervalKind::Open, 0, Some(2)).unwrap();
        assert_eq!(open.elements, vec![1]);
        assert!(c.interval(IntervalKind::Open, 2, Some(0)).is_err());
        assert_eq!(p.height(top), 2);
        assert_eq!(p.height(one), 0);
    }

    #[test]
    fn cycle_rejected() {
        let err =
            FinitePoset::from_covers((0..3usize).map(Label::from).collect(), &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        assert!(matches!(err, PosetError::Cycle(ref c) if c.len() == 4));
    }

    #[test]
    fn link_join_examples() {
        let p = fixtures::subsets_poset(2);
        let max_chain: Vec<usize> = ["1", "12"].iter().map(|s| p.index_of(&(*s).into()).unwrap()).collect();
        let lj = link_join_decomposition(&p, &max_chain).unwrap();
        assert!(lj.factors.iter().all(|f| f.poset.is_empty()));
        assert!(lj.link.is_empty() && lj.isomorphic);

        let p = fixtures::subsets_poset(3);
        let one = p.index_of(&"1".into()).unwrap();
        let lj = link_join_decomposition(&p, &[one]).unwrap();
        assert!(lj.factors[0].poset.is_empty());
        assert_eq!(lj.factors[1].poset.len(), 3);
        assert_eq!(lj.link.f_vector(), vec![3, 2]);
        assert!(lj.isomorphic);

        let f = fixtures::triangle_face_poset();
        let a = f.index_of(&"a".into()).unwrap();
        let lj = link_join_decomposition(&f, &[a]).unwrap();
        assert_eq!(lj.link.f_vector(), vec![2]);
        assert!(lj.isomorphic);
    }

    #[test]
    fn retraction_examples() {
        let c = fixtures::chain_poset_of_length(3);
        let id: Vec<usize> = (0..3).collect();
        assert!(monotone_retraction(&c, &id).unwrap().homology_equivalent);
        let r = monotone_retraction(&c, &[0, 0, 0]).unwrap();
        assert_eq!(r.image.poset.len(), 1);
        assert!(r.homology_equivalent);
        assert!(matches!(
            monotone_retraction(&c, &[1, 1, 0]),
            Err(PosetError::NotMonotone(..))
        ));
    }

    #[test]
    fn fiber_report_identity() {
        let p = fixtures::triangle_face_poset();
        let id: Vec<usize> = (0..p.len()).collect();
        let r = quillen_fiber_report(&p, &p, &id).unwrap();
        assert!(r.all_upper_acyclic && r.all_lower_acyclic && r.homology_equal);
    }

    #[test]
    fn small_thickened_spine() {
        let p = fixtures::chain_poset_of_length(2);
        let t = thickened_spine(&p, &[1]).unwrap();
        let chains: Vec<Vec<usize>> = (0..t.thickened.poset.len()).map(|i| t.chain(i).to_vec()).collect();
        assert_eq!(chains, vec![vec![1], vec![0, 1]]);
        assert_eq!(t.boundary, vec![1]);
        assert_eq!(t.chi, vec![0, 0]);
        assert!(thickened_spine(&p, &[0]).is_err());
    }
}
