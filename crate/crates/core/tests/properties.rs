//! Property tests: exact algebra, homology against the oracle, invariance
//! under relabelling, and equivariance of group actions.

mod common;

use cmkit_core::algebra::{invariant_factors, sparse_invariant_factors, IntMatrix, SmithForm};
use cmkit_core::corpus::{random_locally_cm, random_symmetric_fixture, random_two_complex, rng};
use cmkit_core::local::cm_verdict;
use cmkit_core::vi::vi_verdict;
use cmkit_core::{FgAbelianGroup, GradedGroups, OrientedComplex};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..9, 1usize..9).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn shuffled(x: &OrientedComplex, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..x.vertex_count()).collect();
    perm.shuffle(&mut rng(seed));
    perm
}

fn invariants(g: &GradedGroups, top: isize) -> Vec<common::Invariants> {
    (0..=top).map(|k| common::Invariants::of_group(&g.get(k))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalisation(rows in small_matrix()) {
        let a = IntMatrix::from_rows(&rows);
        let s = SmithForm::compute(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        let to_rows = |m: &IntMatrix| (0..m.rows()).map(|i| m.row(i).to_vec()).collect::<Vec<_>>();
        prop_assert!(common::bareiss_det(&to_rows(&s.u)).magnitude().is_one());
        prop_assert!(common::bareiss_det(&to_rows(&s.v)).magnitude().is_one());
        let d = s.diagonal();
        prop_assert!(d.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        prop_assert_eq!(d.len(), common::rank_q(&rows));
        prop_assert_eq!(sparse_invariant_factors(&a), invariant_factors(&a));
    }

    #[test]
    fn smith_form_rank_mod_p_counts_divisible_factors(rows in small_matrix()) {
        let d = invariant_factors(&IntMatrix::from_rows(&rows));
        for &p in common::PRIMES.iter() {
            let p_big = BigInt::from(p);
            let divisible = d.iter().filter(|x| x.is_multiple_of(&p_big)).count();
            prop_assert_eq!(common::rank_mod_p(&rows, p), d.len() - divisible);
        }
    }

    #[test]
    fn homology_matches_oracle(seed in any::<u64>()) {
        let x = random_two_complex(&mut rng(seed), 7);
        let oracle = common::homology(&common::facets_of(&x));
        let h = x.homology();
        prop_assert_eq!(invariants(&h, 2), oracle[..3].to_vec());
        let c = x.chain_complex();
        for k in 0..c.len() {
            prop_assert_eq!(&c.homology_data(k).group, &h.get(k as isize));
        }
    }

    #[test]
    fn cohomology_follows_universal_coefficients(seed in any::<u64>()) {
        let x = random_two_complex(&mut rng(seed), 7);
        let h = x.homology();
        let c = x.cohomology();
        let cochains = x.chain_complex().dual();
        for k in 0..3isize {
            let expected = FgAbelianGroup::from_invariants(h.get(k).free_rank, h.get(k - 1).torsion);
            prop_assert_eq!(c.get(k), expected);
            prop_assert_eq!(&cochains.cohomology_data(k as usize).group, &c.get(k));
        }
    }

    #[test]
    fn relabelling_preserves_invariants(seed in any::<u64>(), perm_seed in any::<u64>()) {
        let x = random_two_complex(&mut rng(seed), 7);
        let y = x.permuted(&shuffled(&x, perm_seed));
        prop_assert_eq!(y.homology(), x.homology());
        let (vx, vy) = (vi_verdict(&x).unwrap(), vi_verdict(&y).unwrap());
        prop_assert_eq!(vx.visibly_irreducible, vy.visibly_irreducible);
        prop_assert_eq!(vx.no_free_faces, vy.no_free_faces);
        let (cx, cy) = (cm_verdict(&x).unwrap(), cm_verdict(&y).unwrap());
        prop_assert_eq!(cx.locally_cm, cy.locally_cm);
        prop_assert_eq!(cx.offending_simplices.len(), cy.offending_simplices.len());
    }

    #[test]
    fn locally_cm_is_preserved_by_relabelling(seed in any::<u64>(), perm_seed in any::<u64>()) {
        let x = random_locally_cm(&mut rng(seed), 7);
        let y = x.permuted(&shuffled(&x, perm_seed));
        prop_assert!(cm_verdict(&y).unwrap().locally_cm);
        prop_assert_eq!(y.reduced_homology(), x.reduced_homology());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn group_actions_commute_with_coboundaries(seed in any::<u64>()) {
        let f = random_symmetric_fixture(&mut rng(seed));
        let action = &f.action;
        let delta = action.complex.chain_complex().dual();
        let top = action.complex.dim().unwrap();
        for e in 0..action.group.order() {
            for k in 0..top {
                let lhs = delta.coboundary(k).mul(&action.cochain_matrix(e, k));
                let rhs = action.cochain_matrix(e, k + 1).mul(&delta.coboundary(k));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn orbit_stabiliser(seed in any::<u64>()) {
        let f = random_symmetric_fixture(&mut rng(seed));
        let g = &f.action.group;
        for v in 0..f.action.complex.vertex_count() {
            prop_assert_eq!(g.orbit(v).len() * g.stabilizer(v).len(), g.order());
        }
    }
}
