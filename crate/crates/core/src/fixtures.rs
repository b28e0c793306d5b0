//! The shipped fixture corpus.
//!
//! Every homology value quoted for these complexes is re-derived by the
//! independent oracle in the test suite; nothing here is trusted blindly.

use crate::complex::{Label, OrientedComplex, Simplex};
use crate::poset::FinitePoset;

fn from_facets(n: usize, facets: &[[usize; 3]]) -> OrientedComplex {
    let f: Vec<&[usize]> = facets.iter().map(|t| &t[..]).collect();
    OrientedComplex::from_index_facets(n, &f)
}

/// Boundary of the 3-simplex, a 2-sphere on vertices 0..3.
pub fn s2() -> OrientedComplex {
    from_facets(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
}

/// Minimal 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
pub fn t7() -> OrientedComplex {
    let mut facets = Vec::new();
    for i in 0..7 {
        facets.push([i, (i + 1) % 7, (i + 3) % 7]);
        facets.push([i, (i + 2) % 7, (i + 3) % 7]);
    }
    from_facets(7, &facets)
}

/// Minimal 6-vertex real projective plane.
pub fn rp6() -> OrientedComplex {
    from_facets(
        6,
        &[
            [0, 1, 3],
            [0, 1, 5],
            [0, 2, 4],
            [0, 2, 5],
            [0, 3, 4],
            [1, 2, 3],
            [1, 2, 4],
            [1, 4, 5],
            [2, 3, 5],
            [3, 4, 5],
        ],
    )
}

/// Klein bottle on a 3x3 grid: the square `[0,3]^2` with the horizontal
/// sides glued directly and the vertical sides glued with a flip.
pub fn klein_bottle() -> OrientedComplex {
    // Grid point (i, j), i, j in 0..=3, reduced to one of 9 vertices.
    let vertex = |i: usize, j: usize| -> usize {
        let (i, j) = if i == 3 { (0, (3 - j) % 3) } else { (i, j % 3) };
        3 * i + j
    };
    let mut facets = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let a = vertex(i, j);
            let b = vertex(i + 1, j);
            let c = vertex(i, j + 1);
            let d = vertex(i + 1, j + 1);
            facets.push([a, b, d]);
            facets.push([a, c, d]);
        }
    }
    from_facets(9, &facets)
}

/// Boundary of the octahedron, a 2-sphere on vertices 0..5 with antipodal
/// pairs `{0,1}`, `{2,3}`, `{4,5}`.
pub fn octahedron() -> OrientedComplex {
    let mut facets = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                facets.push([a, b, c]);
            }
        }
    }
    from_facets(6, &facets)
}

/// A single triangle with its faces.
pub fn triangle() -> OrientedComplex {
    from_facets(3, &[[0, 1, 2]])
}

/// The complete graph on 4 vertices.
pub fn k4() -> OrientedComplex {
    let edges: Vec<[usize; 2]> = vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
    let f: Vec<&[usize]> = edges.iter().map(|e| &e[..]).collect();
    OrientedComplex::from_index_facets(4, &f)
}

/// The complete graph on `n` vertices.
pub fn complete_graph(n: usize) -> OrientedComplex {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push(vec![i, j]);
        }
    }
    let f: Vec<&[usize]> = edges.iter().map(|e| &e[..]).collect();
    OrientedComplex::from_index_facets(n, &f)
}

/// Path graph with `n` edges on vertices `0..=n`.
pub fn path(n: usize) -> OrientedComplex {
    let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, i + 1]).collect();
    let f: Vec<&[usize]> = edges.iter().map(|e| &e[..]).collect();
    OrientedComplex::from_index_facets(n + 1, &f)
}

/// Cycle graph on `n >= 3` vertices.
pub fn cycle(n: usize) -> OrientedComplex {
    let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    let f: Vec<&[usize]> = edges.iter().map(|e| &e[..]).collect();
    OrientedComplex::from_index_facets(n, &f)
}

/// Two disjoint triangles with their faces.
pub fn two_triangles() -> OrientedComplex {
    from_facets(6, &[[0, 1, 2], [3, 4, 5]])
}

/// A triangle and an edge sharing a vertex.
pub fn edge_and_triangle() -> OrientedComplex {
    OrientedComplex::from_index_facets(4, &[&[0, 1, 2], &[2, 3]])
}

/// Two triangles sharing exactly one vertex (vertex 0).
pub fn bowtie() -> OrientedComplex {
    from_facets(5, &[[0, 1, 2], [0, 3, 4]])
}

/// Face poset of the boundary of a triangle: vertices `a, b, c` and edges
/// `ab, ac, bc`, ordered by inclusion.
pub fn triangle_face_poset() -> FinitePoset {
    let labels = ["a", "b", "c", "ab", "ac", "bc"];
    let covers = [
        ("a", "ab"),
        ("b", "ab"),
        ("a", "ac"),
        ("c", "ac"),
        ("b", "bc"),
        ("c", "bc"),
    ];
    FinitePoset::from_labelled_covers(
        labels.iter().map(|&s| Label::from(s)).collect(),
        &covers
            .iter()
            .map(|&(x, y)| (Label::from(x), Label::from(y)))
            .collect::<Vec<_>>(),
    )
    .expect("face poset is valid")
}

/// Order complex of [`triangle_face_poset`], a 6-cycle.
pub fn hexagon() -> OrientedComplex {
    triangle_face_poset().order_complex()
}

/// One-holed torus: the 7-vertex torus with triangle `{0,1,3}` removed,
/// so its boundary is the 3-cycle `0-1-3`.
fn holed_torus_facets() -> Vec<[usize; 3]> {
    let mut facets = Vec::new();
    for i in 0..7 {
        let mut a = [i, (i + 1) % 7, (i + 3) % 7];
        let mut b = [i, (i + 2) % 7, (i + 3) % 7];
        a.sort_unstable();
        b.sort_unstable();
        facets.push(a);
        facets.push(b);
    }
    facets.retain(|t| *t != [0, 1, 3]);
    facets
}

/// Two one-holed tori glued along their common boundary 3-cycle `{0,1,3}`,
/// with that cycle filled by a triangle.
///
/// Vertices `0, 1, 3` are shared; the first torus uses `2, 4, 5, 6` and the
/// second torus uses fresh copies `7, 8, 9, 10` of them.
pub fn atanasov() -> OrientedComplex {
    let copy = |v: usize| match v {
        2 => 7,
        4 => 8,
        5 => 9,
        6 => 10,
        other => other,
    };
    let first = holed_torus_facets();
    let mut facets: Vec<[usize; 3]> = first.clone();
    for t in &first {
        let mut u = t.map(copy);
        u.sort_unstable();
        facets.push(u);
    }
    facets.push([0, 1, 3]);
    from_facets(11, &facets)
}

/// Face poset of a complex: its simplices ordered by inclusion, labelled
/// by their vertex labels joined with `-`.
pub fn face_poset(x: &OrientedComplex) -> FinitePoset {
    let labels: Vec<Label> = x.simplices().iter().map(|s| simplex_label(x, s)).collect();
    let mut covers = Vec::new();
    for id in 0..x.len() {
        for (_, f) in x.facets_of(id) {
            covers.push((f, id));
        }
    }
    FinitePoset::from_covers(labels, &covers).expect("face poset is valid")
}

fn simplex_label(x: &OrientedComplex, s: &Simplex) -> Label {
    let parts: Vec<String> = s.vertices().iter().map(|&v| x.label(v).to_string()).collect();
    Label::Str(parts.join("-"))
}

/// Barycentric subdivision of a complex, as the order complex of its face poset.
pub fn barycentric(x: &OrientedComplex) -> OrientedComplex {
    face_poset(x).order_complex()
}

/// Nonempty subsets of `{1..=n}` ordered by inclusion, labelled like `"12"`.
pub fn subsets_poset(n: usize) -> FinitePoset {
    let mut sets: Vec<u32> = (1u32..(1 << n)).collect();
    sets.sort_by_key(|m| (m.count_ones(), *m));
    let name = |m: u32| -> Label {
        Label::Str(
            (0..n)
                .filter(|i| m & (1 << i) != 0)
                .map(|i| (i + 1).to_string())
                .collect(),
        )
    };
    let labels: Vec<Label> = sets.iter().map(|&m| name(m)).collect();
    let mut covers = Vec::new();
    for (i, &a) in sets.iter().enumerate() {
        for (j, &b) in sets.iter().enumerate() {
            if a & b == a && b.count_ones() == a.count_ones() + 1 {
                covers.push((i, j));
            }
        }
    }
    FinitePoset::from_covers(labels, &covers).expect("subset poset is valid")
}

/// A chain `0 < 1 < ... < n-1`.
pub fn chain_poset_of_length(n: usize) -> FinitePoset {
    let labels = (0..n).map(Label::from).collect();
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    FinitePoset::from_covers(labels, &covers).expect("chain is valid")
}

/// Named fixtures shipped with the command-line tool.
pub fn named() -> Vec<(&'static str, OrientedComplex)> {
    vec![
        ("s2", s2()),
        ("t7", t7()),
        ("rp6", rp6()),
        ("kb", klein_bottle()),
        ("tri", triangle()),
        ("k4", k4()),
        ("path2", path(2)),
        ("path4", path(4)),
        ("path8", path(8)),
        ("hexagon", hexagon()),
        ("atanasov", atanasov()),
        ("octahedron", octahedron()),
    ]
}

/// Looks up a fixture by name (case-insensitive).
pub fn by_name(name: &str) -> Option<OrientedComplex> {
    let lower = name.to_ascii_lowercase();
    named().into_iter().find(|(n, _)| *n == lower).map(|(_, x)| x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_characteristics() {
        assert_eq!(s2().euler_characteristic(), 2);
        assert_eq!(t7().euler_characteristic(), 0);
        assert_eq!(rp6().euler_characteristic(), 1);
        assert_eq!(klein_bottle().euler_characteristic(), 0);
        assert_eq!(atanasov().euler_characteristic(), -1);
    }

    #[test]
    fn closed_surfaces_have_two_triangles_per_edge() {
        for x in [s2(), t7(), rp6(), klein_bottle()] {
            for e in x.ids_of_dim(1) {
                assert_eq!(x.cofacets(e).len(), 2, "{}", x.display_simplex(x.simplex(e)));
            }
        }
    }

    #[test]
    fn atanasov_counts() {
        let y = atanasov();
        assert_eq!(y.f_vector(), vec![11, 39, 27]);
    }

    #[test]
    fn hexagon_is_six_cycle() {
        let h = hexagon();
        assert_eq!(h.f_vector(), vec![6, 6]);
        assert_eq!(h.euler_characteristic(), 0);
    }
}
