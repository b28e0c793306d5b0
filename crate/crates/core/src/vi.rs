//! Visible irreducibility of 2-complexes.
//!
//! The link graph of a vertex `V` has one node `v_E` per edge `E ∋ V` and
//! one edge per triangle containing `V`. A 2-complex is visibly irreducible
//! when every link graph (i) has an edge, (ii) is connected, (iii) has no
//! leaves and (iv) has no cut vertices. The crosscheck compares this with
//! two local homology characterizations.

use petgraph::algo::articulation_points::articulation_points;
use petgraph::algo::connected_components;
use petgraph::graph::{NodeIndex, UnGraph};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{invariant_factors, rank, IntMatrix};
use crate::complex::{OrientedComplex, Simplex};
use crate::local::{cm_verdict_in_degree, local_cohomology_cosheaf, local_homology_sheaf};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ViError {
    #[error("complex has dimension {0}, expected at most 2")]
    TooHighDimension(usize),
    #[error("vertex {0} is not in the complex")]
    UnknownVertex(usize),
}

fn require_dim_at_most_two(y: &OrientedComplex) -> Result<(), ViError> {
    match y.dim() {
        Some(d) if d > 2 => Err(ViError::TooHighDimension(d)),
        _ => Ok(()),
    }
}

/// The link graph of a vertex.
#[derive(Clone, Debug, Serialize)]
pub struct LinkGraph {
    pub vertex: String,
    /// Flat ids of the edges `E` containing the vertex, one node `v_E` each.
    pub nodes: Vec<usize>,
    /// Label of the other endpoint of each edge.
    pub node_labels: Vec<String>,
    /// Pairs of node indices, one per triangle containing the vertex.
    pub edges: Vec<(usize, usize)>,
    pub degrees: Vec<usize>,
}

impl LinkGraph {
    fn graph(&self) -> UnGraph<(), ()> {
        let mut g = UnGraph::new_undirected();
        for _ in &self.nodes {
            g.add_node(());
        }
        for &(a, b) in &self.edges {
            g.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
        }
        g
    }

    pub fn component_count(&self) -> usize {
        connected_components(&self.graph())
    }

    /// Components after deleting node `i` and its incident edges.
    pub fn component_count_without(&self, i: usize) -> usize {
        let mut g = UnGraph::<(), ()>::new_undirected();
        let keep: Vec<usize> = (0..self.nodes.len()).filter(|&j| j != i).collect();
        for _ in &keep {
            g.add_node(());
        }
        let pos = |j: usize| keep.iter().position(|&k| k == j);
        for &(a, b) in &self.edges {
            if let (Some(a), Some(b)) = (pos(a), pos(b)) {
                g.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
            }
        }
        connected_components(&g)
    }

    pub fn cut_vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = articulation_points(&self.graph())
            .into_iter()
            .map(|n| n.index())
            .collect();
        v.sort_unstable();
        v
    }
}

pub fn vertex_link_graph(y: &OrientedComplex, v: usize) -> Result<LinkGraph, ViError> {
    require_dim_at_most_two(y)?;
    let vid = y
        .id_of(&Simplex::from_sorted(vec![v]))
        .ok_or(ViError::UnknownVertex(v))?;
    let nodes: Vec<usize> = y.cofacets(vid).to_vec();
    let other = |e: usize| *y.simplex(e).vertices().iter().find(|&&u| u != v).expect("edge");
    let node_labels = nodes.iter().map(|&e| y.label(other(e)).to_string()).collect();
    let mut edges = Vec::new();
    for (i, &e) in nodes.iter().enumerate() {
        for &t in y.cofacets(e) {
            for (j, &f) in nodes.iter().enumerate().skip(i + 1) {
                if y.cofacets(f).contains(&t) {
                    edges.push((i, j));
                }
            }
        }
    }
    let mut degrees = vec![0; nodes.len()];
    for &(a, b) in &edges {
        degrees[a] += 1;
        degrees[b] += 1;
    }
    Ok(LinkGraph {
        vertex: y.label(v).to_string(),
        nodes,
        node_labels,
        edges,
        degrees,
    })
}

/// Conditions (i)-(iv) at one vertex, with witnesses for failures.
#[derive(Clone, Debug, Serialize)]
pub struct VertexFlags {
    pub vertex: String,
    pub has_edge: bool,
    pub connected: bool,
    pub no_leaves: bool,
    pub no_cut_vertices: bool,
    /// Other endpoint of an edge `E` whose node `v_E` is a leaf.
    pub leaf: Option<String>,
    pub cut_vertex: Option<String>,
    /// Two link nodes in different components.
    pub disconnection: Option<(String, String)>,
}

impl VertexFlags {
    pub fn all(&self) -> bool {
        self.has_edge && self.connected && self.no_leaves && self.no_cut_vertices
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ViVerdict {
    pub vertices: Vec<VertexFlags>,
    pub visibly_irreducible: bool,
    /// Every edge lies in at least two triangles and every maximal simplex
    /// is a triangle.
    pub no_free_faces: bool,
}

fn flags_for(g: &LinkGraph) -> VertexFlags {
    let has_edge = !g.edges.is_empty();
    let comps = g.component_count();
    let connected = comps <= 1 && !g.nodes.is_empty();
    let disconnection = if comps > 1 {
        let graph = g.graph();
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(g.nodes.len());
        for e in graph.edge_indices() {
            let (a, b) = graph.edge_endpoints(e).expect("edge");
            uf.union(a.index(), b.index());
        }
        (1..g.nodes.len())
            .find(|&j| !uf.equiv(0, j))
            .map(|j| (g.node_labels[0].clone(), g.node_labels[j].clone()))
    } else {
        None
    };
    let leaf = g.degrees.iter().position(|&d| d == 1).map(|i| g.node_labels[i].clone());
    let cuts = g.cut_vertices();
    VertexFlags {
        vertex: g.vertex.clone(),
        has_edge,
        connected,
        no_leaves: leaf.is_none(),
        no_cut_vertices: cuts.is_empty(),
        leaf,
        cut_vertex: cuts.first().map(|&i| g.node_labels[i].clone()),
        disconnection,
    }
}

fn vertices_in_complex(y: &OrientedComplex) -> Vec<usize> {
    y.simplices_of_dim(0).iter().map(|s| s.vertices()[0]).collect()
}

pub fn vi_verdict(y: &OrientedComplex) -> Result<ViVerdict, ViError> {
    require_dim_at_most_two(y)?;
    let vertices: Vec<VertexFlags> = vertices_in_complex(y)
        .par_iter()
        .map(|&v| flags_for(&vertex_link_graph(y, v).expect("vertex is present")))
        .collect();
    let visibly_irreducible = !vertices.is_empty() && vertices.iter().all(VertexFlags::all);
    let no_free_faces = !y.is_empty()
        && y.maximal_simplices().iter().all(|&m| y.simplex(m).dim() == 2)
        && y.ids_of_dim(1).all(|e| y.cofacets(e).len() >= 2);
    Ok(ViVerdict {
        vertices,
        visibly_irreducible,
        no_free_faces,
    })
}

fn is_surjective(m: &IntMatrix) -> bool {
    let f = invariant_factors(m);
    f.len() == m.rows() && f.iter().all(|d| d == &num_bigint::BigInt::from(1))
}

fn is_injective(m: &IntMatrix) -> bool {
    rank(m) == m.cols()
}

/// The three characterizations side by side.
#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub visibly_irreducible: bool,
    pub locally_cm: bool,
    /// Locally CM and every restriction map of `h_2` is onto.
    pub surjective_restrictions: bool,
    /// Locally CM and every corestriction map of `h^2` is injective.
    pub injective_corestrictions: bool,
    pub agree: bool,
    /// Conditions (i) and (ii) at every vertex.
    pub conditions_i_ii: bool,
    /// `(i)+(ii)` agrees with locally CM.
    pub cm_matches_i_ii: bool,
    /// A face pair where a restriction fails to be onto.
    pub restriction_witness: Option<(String, String)>,
}

pub fn vi_characterization_crosscheck(y: &OrientedComplex) -> Result<CrosscheckReport, ViError> {
    let verdict = vi_verdict(y)?;
    let locally_cm = !y.is_empty() && cm_verdict_in_degree(y, 2).locally_cm;
    let pairs: Vec<(usize, usize)> = (0..y.len())
        .flat_map(|s| y.cofacets(s).iter().map(move |&t| (s, t)))
        .collect();
    let (restriction_witness, surjective_restrictions, injective_corestrictions) = if locally_cm {
        let sheaf = local_homology_sheaf(y, 2);
        let cosheaf = local_cohomology_cosheaf(y, 2);
        let witness = pairs
            .iter()
            .find(|&&(s, t)| !is_surjective(&sheaf.system.map(s, t)))
            .map(|&(s, t)| (y.display_simplex(y.simplex(s)), y.display_simplex(y.simplex(t))));
        let injective = pairs.iter().all(|&(s, t)| is_injective(&cosheaf.system.map(s, t)));
        (witness.clone(), witness.is_none(), injective)
    } else {
        (None, false, false)
    };
    let conditions_i_ii = !verdict.vertices.is_empty() && verdict.vertices.iter().all(|f| f.has_edge && f.connected);
    Ok(CrosscheckReport {
        visibly_irreducible: verdict.visibly_irreducible,
        locally_cm,
        surjective_restrictions,
        injective_corestrictions,
        agree: verdict.visibly_irreducible == surjective_restrictions
            && surjective_restrictions == injective_corestrictions,
        conditions_i_ii,
        cm_matches_i_ii: conditions_i_ii == locally_cm,
        restriction_witness,
    })
}

/// Checks, for every edge `E` in a triangle `F`, that `h_2(E) → h_2(F)` is
/// onto exactly when `h_2(E) ≠ 0`.
pub fn surjectivity_witness_check(y: &OrientedComplex) -> Result<bool, ViError> {
    require_dim_at_most_two(y)?;
    let sheaf = local_homology_sheaf(y, 2);
    Ok(y.ids_of_dim(1).all(|e| {
        y.cofacets(e).iter().all(|&f| {
            let onto = is_surjective(&sheaf.system.map(e, f));
            onto == !sheaf.system.values[e].is_trivial()
        })
    }))
}

/// One vertex-edge pair of the cokernel comparison.
#[derive(Clone, Debug, Serialize)]
pub struct CokernelEntry {
    pub vertex: String,
    pub edge: String,
    /// Free rank of the cokernel of `h_2(V) → h_2(E)`.
    pub cokernel_rank: usize,
    /// Components of the link graph with `v_E` deleted, minus components
    /// of the link graph, plus one if `v_E` is isolated.
    pub predicted_rank: usize,
    pub is_cut_vertex: bool,
}

/// Compares the cokernel of each `h_2(V) → h_2(E)` with the component
/// count of the link graph minus the open star of `v_E`.
pub fn cokernel_rank_check(y: &OrientedComplex) -> Result<Vec<CokernelEntry>, ViError> {
    require_dim_at_most_two(y)?;
    let sheaf = local_homology_sheaf(y, 2);
    let mut out = Vec::new();
    for v in vertices_in_complex(y) {
        let g = vertex_link_graph(y, v)?;
        let vid = y.id_of(&Simplex::from_sorted(vec![v])).expect("vertex");
        let comps = g.component_count();
        let cuts = g.cut_vertices();
        for (i, &e) in g.nodes.iter().enumerate() {
            let m = sheaf.system.map(vid, e);
            let cokernel_rank = m.rows() - rank(&m);
            let isolated = usize::from(g.degrees[i] == 0);
            out.push(CokernelEntry {
                vertex: g.vertex.clone(),
                edge: y.display_simplex(y.simplex(e)),
                cokernel_rank,
                predicted_rank: g.component_count_without(i) + isolated - comps,
                is_cut_vertex: cuts.contains(&i),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn link_graphs() {
        let g = vertex_link_graph(&fixtures::triangle(), 0).unwrap();
        assert_eq!((g.nodes.len(), g.edges.len()), (2, 1));
        let g = vertex_link_graph(&fixtures::s2(), 0).unwrap();
        assert_eq!((g.nodes.len(), g.edges.len()), (3, 3));
        assert!(g.degrees.iter().all(|&d| d == 2));
        let g = vertex_link_graph(&fixtures::bowtie(), 0).unwrap();
        assert_eq!((g.nodes.len(), g.edges.len(), g.component_count()), (4, 2, 2));
    }

    #[test]
    fn verdicts() {
        assert!(vi_verdict(&fixtures::s2()).unwrap().visibly_irreducible);
        let tri = vi_verdict(&fixtures::triangle()).unwrap();
        assert!(!tri.visibly_irreducible);
        assert!(tri.vertices.iter().all(|f| !f.no_leaves && f.leaf.is_some()));
        assert!(vi_verdict(&fixtures::atanasov()).unwrap().visibly_irreducible);
        let bow = vi_verdict(&fixtures::bowtie()).unwrap();
        assert!(bow.vertices[0].disconnection.is_some());
    }

    #[test]
    fn crosscheck_examples() {
        for (x, expected) in [
            (fixtures::s2(), true),
            (fixtures::triangle(), false),
            (fixtures::atanasov(), true),
        ] {
            let r = vi_characterization_crosscheck(&x).unwrap();
            assert!(r.agree && r.cm_matches_i_ii);
            assert_eq!(r.visibly_irreducible, expected);
        }
        let r = vi_characterization_crosscheck(&fixtures::triangle()).unwrap();
        assert!(r.locally_cm && r.restriction_witness.is_some());
    }

    #[test]
    fn atanasov_shared_vertex_link() {
        let y = fixtures::atanasov();
        let g = vertex_link_graph(&y, 0).unwrap();
        assert_eq!(g.component_count(), 1);
        assert!(g.cut_vertices().is_empty());
        assert!(g.degrees.iter().all(|&d| d >= 2));
    }

    #[test]
    fn local_witnesses() {
        for x in [
            fixtures::triangle(),
            fixtures::bowtie(),
            fixtures::s2(),
            fixtures::atanasov(),
        ] {
            assert!(surjectivity_witness_check(&x).unwrap());
            for e in cokernel_rank_check(&x).unwrap() {
                assert_eq!(e.cokernel_rank, e.predicted_rank, "{} {}", e.vertex, e.edge);
            }
        }
    }

    #[test]
    fn three_dimensional_rejected() {
        let x = OrientedComplex::from_index_facets(4, &[&[0, 1, 2, 3]]);
        assert_eq!(vi_verdict(&x).unwrap_err(), ViError::TooHighDimension(3));
    }
}
