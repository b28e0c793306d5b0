//! Seeded generators for the test corpus: exhaustive small 2-complexes,
//! random 2-complexes, random locally CM complexes, random posets and
//! random symmetric fixtures.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Label, OrientedComplex, Simplex};
use crate::equivariant::{automorphisms, induced_on_face_poset, ComplexAction};
use crate::fixtures;
use crate::local::cm_verdict;
use crate::poset::FinitePoset;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn subsets_of_size(m: usize, k: usize) -> Vec<u32> {
    (0u32..(1 << m)).filter(|s| s.count_ones() as usize == k).collect()
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

fn complex_from_masks(m: usize, masks: &[u32]) -> OrientedComplex {
    let labels = (0..m).map(Label::from).collect();
    let vertices = (0..m).map(|v| Simplex::from_sorted(vec![v]));
    let rest = masks.iter().map(|&s| Simplex::from_sorted(bits(s)));
    OrientedComplex::from_simplices(labels, vertices.chain(rest))
}

fn permute_mask(mask: u32, perm: &[usize]) -> u32 {
    bits(mask).iter().fold(0, |acc, &v| acc | (1 << perm[v]))
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// Every 2-complex with at least one triangle whose vertex set is
/// `{0..m-1}` for some `3 <= m <= max_vertices`, up to relabelling.
pub fn exhaustive_two_complexes(max_vertices: usize) -> Vec<OrientedComplex> {
    let mut out = Vec::new();
    for m in 3..=max_vertices {
        let perms = permutations(m);
        let triangles = subsets_of_size(m, 3);
        let edges = subsets_of_size(m, 2);
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        for tmask in 1u32..(1 << triangles.len()) {
            let tris: Vec<u32> = bits(tmask).iter().map(|&i| triangles[i]).collect();
            let forced: Vec<u32> = edges
                .iter()
                .copied()
                .filter(|&e| tris.iter().any(|&t| t & e == e))
                .collect();
            let free: Vec<u32> = edges.iter().copied().filter(|e| !forced.contains(e)).collect();
            for fmask in 0u32..(1 << free.len()) {
                let mut simplices: Vec<u32> = tris.clone();
                simplices.extend(forced.iter().copied());
                simplices.extend(bits(fmask).iter().map(|&i| free[i]));
                let canonical = perms
                    .iter()
                    .map(|p| {
                        let mut v: Vec<u32> = simplices.iter().map(|&s| permute_mask(s, p)).collect();
                        v.sort_unstable();
                        v
                    })
                    .min()
                    .expect("at least one permutation");
                if seen.insert(canonical.clone()) {
                    out.push(complex_from_masks(m, &canonical));
                }
            }
        }
    }
    out
}

/// A random 2-complex with at least one triangle on `3..=max_vertices`
/// vertices, possibly with extra edges.
pub fn random_two_complex(rng: &mut impl Rng, max_vertices: usize) -> OrientedComplex {
    let m = rng.gen_range(3..=max_vertices);
    let triangles = subsets_of_size(m, 3);
    let edges = subsets_of_size(m, 2);
    let p_tri: f64 = rng.gen_range(0.1..0.6);
    let p_edge: f64 = rng.gen_range(0.0..0.3);
    let mut simplices: Vec<u32> = triangles.iter().copied().filter(|_| rng.gen_bool(p_tri)).collect();
    if simplices.is_empty() {
        simplices.push(*triangles.choose(rng).expect("m >= 3"));
    }
    simplices.extend(edges.iter().copied().filter(|_| rng.gen_bool(p_edge)));
    complex_from_masks(m, &simplices)
}

/// A random locally CM complex of dimension 1 or 2 on at most
/// `max_vertices` vertices, found by rejection sampling.
pub fn random_locally_cm(rng: &mut impl Rng, max_vertices: usize) -> OrientedComplex {
    loop {
        let candidate = if rng.gen_bool(0.3) {
            random_graph_without_isolated_vertices(rng, max_vertices)
        } else {
            random_pure_two_complex(rng, max_vertices)
        };
        if cm_verdict(&candidate).is_ok_and(|v| v.locally_cm) {
            return candidate;
        }
    }
}

fn random_graph_without_isolated_vertices(rng: &mut impl Rng, max_vertices: usize) -> OrientedComplex {
    let m = rng.gen_range(2..=max_vertices);
    let edges = subsets_of_size(m, 2);
    let p: f64 = rng.gen_range(0.2..0.8);
    let mut chosen: Vec<u32> = edges.iter().copied().filter(|_| rng.gen_bool(p)).collect();
    // Attach any isolated vertex to a random neighbour.
    for v in 0..m {
        if !chosen.iter().any(|&e| e & (1 << v) != 0) {
            let mut u = rng.gen_range(0..m - 1);
            if u >= v {
                u += 1;
            }
            chosen.push((1 << v) | (1 << u));
        }
    }
    complex_from_masks(m, &chosen)
}

fn random_pure_two_complex(rng: &mut impl Rng, max_vertices: usize) -> OrientedComplex {
    let m = rng.gen_range(3..=max_vertices);
    let triangles = subsets_of_size(m, 3);
    let count = rng.gen_range(1..=triangles.len().min(14));
    let chosen: Vec<u32> = triangles.choose_multiple(rng, count).copied().collect();
    let used: u32 = chosen.iter().fold(0, |a, &t| a | t);
    let keep = bits(used);
    let relabel = |mask: u32| -> u32 {
        bits(mask).iter().fold(0, |a, &v| {
            a | (1 << keep.iter().position(|&k| k == v).expect("used vertex"))
        })
    };
    let masks: Vec<u32> = chosen.iter().map(|&t| relabel(t)).collect();
    complex_from_masks(keep.len(), &masks)
}

/// A random poset on `1..=max_elements` elements: a random relation
/// `i < j` for `i < j` in a hidden order, closed transitively.
pub fn random_poset(rng: &mut impl Rng, max_elements: usize) -> FinitePoset {
    let m = rng.gen_range(1..=max_elements);
    let p: f64 = rng.gen_range(0.1..0.6);
    let mut lt = vec![vec![false; m]; m];
    for (i, row) in lt.iter_mut().enumerate() {
        for cell in row.iter_mut().skip(i + 1) {
            *cell = rng.gen_bool(p);
        }
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                if lt[i][k] && lt[k][j] {
                    lt[i][j] = true;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    let labels = (0..m).map(|i| Label::Str(format!("p{}", order[i]))).collect();
    FinitePoset::from_relation(labels, |a, b| lt[a][b])
}

/// A group action on the barycentric subdivision of a small symmetric
/// complex, with orbit representatives among the original vertices.
#[derive(Clone, Debug)]
pub struct SymmetricFixture {
    pub name: String,
    pub action: ComplexAction,
    pub representatives: Vec<usize>,
}

/// Base complexes for [`random_symmetric_fixture`].
pub fn symmetric_bases() -> Vec<(String, OrientedComplex)> {
    let mut out: Vec<(String, OrientedComplex)> = (3..=6).map(|k| (format!("cycle{k}"), fixtures::cycle(k))).collect();
    out.push(("k4".into(), fixtures::complete_graph(4)));
    out.push(("k5".into(), fixtures::complete_graph(5)));
    out.push(("tetrahedron-boundary".into(), fixtures::s2()));
    out.push(("octahedron".into(), fixtures::octahedron()));
    out.push(("t7".into(), fixtures::t7()));
    out
}

/// Picks a base, a random subgroup of its automorphisms (generated by up
/// to two random automorphisms) and the induced action on its subdivision.
pub fn random_symmetric_fixture(rng: &mut impl Rng) -> SymmetricFixture {
    let bases = symmetric_bases();
    let (name, base) = bases.choose(rng).expect("nonempty").clone();
    let autos = automorphisms(&base);
    let count = rng.gen_range(0..=2);
    let chosen: Vec<Vec<usize>> = (0..count)
        .map(|_| autos.choose(rng).expect("identity").clone())
        .collect();
    symmetric_fixture(&name, &base, &chosen)
}

pub fn symmetric_fixture(name: &str, base: &OrientedComplex, generators: &[Vec<usize>]) -> SymmetricFixture {
    let p = fixtures::face_poset(base);
    let gens: Vec<Vec<usize>> = generators.iter().map(|g| induced_on_face_poset(base, &p, g)).collect();
    let action = ComplexAction::from_poset(&p, &gens).expect("automorphisms act by poset automorphisms");
    let x = &action.complex;
    let base_vertices: Vec<usize> = (0..x.vertex_count())
        .filter(|&v| !x.label(v).to_string().contains('-'))
        .collect();
    let mut representatives = Vec::new();
    let mut covered = vec![false; x.vertex_count()];
    for v in base_vertices {
        if !covered[v] {
            for u in action.group.orbit(v) {
                covered[u] = true;
            }
            representatives.push(v);
        }
    }
    let names: Vec<String> = generators.iter().map(|g| format!("{g:?}")).collect();
    SymmetricFixture {
        name: format!("{name} {}", names.join(" ")),
        action,
        representatives,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_three_vertices() {
        // One triangle; the edges are forced.
        assert_eq!(exhaustive_two_complexes(3).len(), 1);
    }

    #[test]
    fn exhaustive_four_vertices_count() {
        let all = exhaustive_two_complexes(4);
        // m = 3: 1. m = 4: up to relabelling, 1..4 triangles give 1, 1, 1, 1
        // triangle sets; extra edges: 1 triangle -> edges {03},{13},{23}
        // subsets up to symmetry (4 cases: 0, 1, 2, 3 edges); 2 triangles
        // share an edge and miss one edge (2 cases); 3 and 4 triangles force
        // all edges.
        assert_eq!(all.len(), 1 + 4 + 2 + 1 + 1);
    }

    #[test]
    fn random_generators_are_deterministic() {
        let a = random_two_complex(&mut rng(7), 8);
        let b = random_two_complex(&mut rng(7), 8);
        assert_eq!(a.simplices(), b.simplices());
        let x = random_locally_cm(&mut rng(3), 8);
        assert!(cm_verdict(&x).unwrap().locally_cm);
        let p = random_poset(&mut rng(1), 7);
        assert!(!p.is_empty());
    }

    #[test]
    fn symmetric_fixture_orbits() {
        let f = symmetric_fixture("cycle3", &fixtures::cycle(3), &[vec![1, 2, 0]]);
        assert_eq!(f.action.group.order(), 3);
        assert_eq!(f.representatives.len(), 1);
    }
}
