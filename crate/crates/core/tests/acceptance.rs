//! Acceptance suite: runs criteria 1-10 and prints one PASS/FAIL line each.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cmkit_core::algebra::{IntMatrix, SmithForm};
use cmkit_core::coefficients::{
    compactly_determined_dual, cosheaf_chain_complex, mittag_leffler_check, sheaf_cochain_complex,
};
use cmkit_core::complex::{Label, Selection};
use cmkit_core::corpus::{
    exhaustive_two_complexes, random_locally_cm, random_poset, random_symmetric_fixture, random_two_complex, rng,
    symmetric_fixture,
};
use cmkit_core::duality::{chain_map_signs, duality_report, relative_duality_report, Convention, SignRelation};
use cmkit_core::equivariant::{dualizing_bound_report, rose_quotient, top_resolution, ComplexAction};
use cmkit_core::fixtures;
use cmkit_core::local::{
    cm_verdict, local_cohomology_cosheaf, local_homology, local_homology_sheaf, LocalSystem, SystemKind,
};
use cmkit_core::poset::{link_join_decomposition, thickened_spine};
use cmkit_core::vi::{vi_characterization_crosscheck, vi_verdict};
use cmkit_core::OrientedComplex;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const DUALITY_LIMIT: Duration = Duration::from_secs(5);
const EXHAUSTIVE_LIMIT: Duration = Duration::from_secs(60);
const SNF_LIMIT: Duration = Duration::from_secs(10);

fn locally_cm_fixtures() -> Vec<(&'static str, OrientedComplex)> {
    fixtures::named()
        .into_iter()
        .filter(|(_, x)| cm_verdict(x).is_ok_and(|v| v.locally_cm))
        .collect()
}

fn criterion_1() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (name, x) in [
        ("s2", fixtures::s2()),
        ("t7", fixtures::t7()),
        ("rp6", fixtures::rp6()),
        ("kb", fixtures::klein_bottle()),
    ] {
        let start = Instant::now();
        let r = duality_report(&x).map_err(|e| format!("{name}: {e}"))?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        ensure!(elapsed < DUALITY_LIMIT, "{name} took {elapsed:?}");
        for f in &r.forms {
            ensure!(f.holds, "{name}: {} fails", f.statement);
        }
        ensure!(
            r.cap.chain_map_valid && r.cap.all_isomorphisms,
            "{name}: cap is not a chain isomorphism"
        );
        if name == "rp6" {
            let e = &r.forms[2].entries[2];
            ensure!(
                e.left.to_string() == "Z/2" && e.right.to_string() == "Z/2",
                "rp6: H^2_c = {}, H_0(X;h^2) = {}",
                e.left,
                e.right
            );
        }
    }
    Ok(format!("S2, T7, RP6, KB all forms hold; slowest {slowest:.2?}"))
}

fn expected_sign(n: usize, l: usize) -> SignRelation {
    if (n - l + 1).is_multiple_of(2) {
        SignRelation::Plus
    } else {
        SignRelation::Minus
    }
}

fn criterion_2() -> Outcome {
    let mut corpus: Vec<OrientedComplex> = locally_cm_fixtures().into_iter().map(|(_, x)| x).collect();
    let mut r = rng(2);
    corpus.extend((0..50).map(|_| random_locally_cm(&mut r, 8)));
    let mut checked = 0;
    for x in &corpus {
        for s in chain_map_signs(x).map_err(|e| e.to_string())? {
            ensure!(
                s.relation.is_consistent(),
                "inconsistent sign at (n,l) = ({}, {})",
                s.n,
                s.l
            );
            ensure!(
                s.relation == SignRelation::BothZero || s.relation == expected_sign(s.n, s.l),
                "sign at (n,l) = ({}, {}) is {:?}",
                s.n,
                s.l,
                s.relation
            );
            checked += 1;
        }
    }
    Ok(format!(
        "{} complexes, {checked} (n,l) checks, sign (-1)^(n-l+1)",
        corpus.len()
    ))
}

fn link_corpus() -> Vec<OrientedComplex> {
    let mut corpus: Vec<OrientedComplex> = fixtures::named().into_iter().map(|(_, x)| x).collect();
    let mut r = rng(3);
    for i in 0..200 {
        corpus.push(if i % 2 == 0 {
            random_two_complex(&mut r, 8)
        } else {
            random_locally_cm(&mut r, 8)
        });
    }
    corpus
}

fn criterion_3(corpus: &[OrientedComplex]) -> Outcome {
    let mut simplices = 0;
    for x in corpus {
        let facets = common::facets_of(x);
        for s in x.simplices() {
            let local = local_homology(x, s).map_err(|e| e.to_string())?;
            let link = x.link(s).map_err(|e| e.to_string())?;
            let link_h = link.reduced_homology();
            let oracle = common::reduced_homology(&common::link_facets(&facets, s.vertices()));
            let shift = s.dim() as isize + 1;
            for k in 0..=x.dim().unwrap_or(0) as isize {
                let from_link = link_h.get(k - shift);
                ensure!(
                    local.get(k) == from_link,
                    "{}: h_{k} = {} but link gives {}",
                    x.display_simplex(s),
                    local.get(k),
                    from_link
                );
                let j = k - shift;
                let o = if j < -1 || (j + 1) as usize >= oracle.len() {
                    common::Invariants::zero()
                } else {
                    oracle[(j + 1) as usize].clone()
                };
                ensure!(
                    common::Invariants::of_group(&from_link) == o,
                    "{}: oracle disagrees",
                    x.display_simplex(s)
                );
            }
            simplices += 1;
        }
    }
    Ok(format!("{} complexes, {simplices} simplices", corpus.len()))
}

fn criterion_4(corpus: &[OrientedComplex]) -> Outcome {
    for x in corpus {
        let all = Selection::all(x);
        let f = LocalSystem::constant(x, SystemKind::Sheaf);
        let g = LocalSystem::constant(x, SystemKind::Cosheaf);
        let sheaf = sheaf_cochain_complex(x, &f, &all).map_err(|e| e.to_string())?.groups();
        let cosheaf = cosheaf_chain_complex(x, &g, &all).map_err(|e| e.to_string())?.groups();
        ensure!(
            sheaf == x.cohomology(),
            "sheaf cohomology differs on {:?}",
            x.f_vector()
        );
        ensure!(
            cosheaf == x.homology(),
            "cosheaf homology differs on {:?}",
            x.f_vector()
        );
    }
    Ok(format!("{} complexes", corpus.len()))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let exhaustive = exhaustive_two_complexes(5);
    let mut vi_count = 0;
    for x in &exhaustive {
        let r = vi_characterization_crosscheck(x).map_err(|e| e.to_string())?;
        ensure!(r.agree, "characterizations disagree on {:?}", common::facets_of(x));
        ensure!(
            r.cm_matches_i_ii,
            "(i)+(ii) vs locally CM disagree on {:?}",
            common::facets_of(x)
        );
        vi_count += usize::from(r.visibly_irreducible);
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < EXHAUSTIVE_LIMIT, "exhaustive pass took {elapsed:?}");
    let mut r = rng(5);
    for _ in 0..500 {
        let x = random_two_complex(&mut r, 8);
        let c = vi_characterization_crosscheck(&x).map_err(|e| e.to_string())?;
        ensure!(
            c.agree && c.cm_matches_i_ii,
            "disagreement on {:?}",
            common::facets_of(&x)
        );
    }
    ensure!(
        !vi_verdict(&fixtures::triangle()).unwrap().visibly_irreducible,
        "TRI reported irreducible"
    );
    ensure!(
        vi_verdict(&fixtures::s2()).unwrap().visibly_irreducible,
        "S2 reported reducible"
    );
    ensure!(
        vi_verdict(&fixtures::atanasov()).unwrap().visibly_irreducible,
        "Atanasov reported reducible"
    );
    Ok(format!(
        "{} exhaustive complexes ({vi_count} irreducible) in {elapsed:.2?}, 500 random",
        exhaustive.len()
    ))
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    for _ in 0..100 {
        let p = random_poset(&mut r, 7);
        let sub = p.chain_poset().poset;
        ensure!(
            sub.homology() == p.homology(),
            "subdivision changes homology of {:?}",
            p.labels()
        );
    }
    let mut chains = 0;
    for _ in 0..50 {
        let p = random_poset(&mut r, 6);
        for c in p.chains() {
            let lj = link_join_decomposition(&p, &c).map_err(|e| e.to_string())?;
            ensure!(lj.isomorphic, "link-join fails on chain {c:?}");
            chains += 1;
        }
    }
    let p = fixtures::subsets_poset(3);
    let spine: Vec<usize> = (0..p.len()).filter(|&i| p.label(i).to_string().len() >= 2).collect();
    let t = thickened_spine(&p, &spine).map_err(|e| e.to_string())?;
    let rep = t.verify(&p);
    ensure!(rep.chi_retraction_valid, "chi is not a monotone retraction");
    ensure!(rep.chi_image_is_spine_chains, "chi image is not the chain poset of S");
    ensure!(rep.heights_match_chain_length, "heights differ from chain lengths");
    ensure!(rep.homology_equivalent, "H(L) != H(S)");
    ensure!(
        rep.boundary_size > 0 && rep.boundary_size < rep.size,
        "boundary size {} of {}",
        rep.boundary_size,
        rep.size
    );
    Ok(format!(
        "100 subdivisions, {chains} link-join chains, spine L of size {}",
        rep.size
    ))
}

fn criterion_7() -> Outcome {
    let x = fixtures::s2();
    let mut subsets: Vec<Vec<usize>> = vec![Vec::new()];
    for a in 0..4 {
        subsets.push(vec![a]);
        for b in a + 1..4 {
            subsets.push(vec![a, b]);
        }
    }
    let mut working: Option<Vec<Convention>> = None;
    for l in &subsets {
        let labels: Vec<Label> = l.iter().map(|&v| x.label(v).clone()).collect();
        let r = relative_duality_report(&x, &labels, Convention::LvcFirst).map_err(|e| e.to_string())?;
        ensure!(
            r.conventions.iter().any(|c| c.groups_hold),
            "L = {l:?}: group-level forms fail under both conventions"
        );
        let w = r.working_conventions.clone();
        working = Some(match working {
            None => w,
            Some(prev) => prev.into_iter().filter(|c| w.contains(c)).collect(),
        });
    }
    let working = working.unwrap_or_default();
    ensure!(!working.is_empty(), "no convention works for every L");
    let names: Vec<&str> = working
        .iter()
        .map(|c| match c {
            Convention::LFirst => "L-first",
            Convention::LvcFirst => "Lvc-first",
        })
        .collect();
    Ok(format!(
        "{} subcomplexes; working convention {}",
        subsets.len(),
        names.join(", ")
    ))
}

fn hexagon_action(generators: &[Vec<usize>]) -> (ComplexAction, usize) {
    let f = symmetric_fixture("cycle3", &fixtures::cycle(3), generators);
    let rho = f.representatives[0];
    (f.action, rho)
}

fn criterion_8() -> Outcome {
    for x in [fixtures::hexagon(), fixtures::k4()] {
        let r = top_resolution(&x, None).map_err(|e| e.to_string())?;
        ensure!(
            r.presentations_isomorphic,
            "presentations of D differ on {:?}",
            x.f_vector()
        );
    }
    let (s3, rho) = hexagon_action(&[vec![1, 2, 0], vec![1, 0, 2]]);
    let eq = top_resolution(&s3.complex, Some(&s3)).map_err(|e| e.to_string())?;
    ensure!(eq.equivariance.iter().all(|c| c.commutes), "cap is not equivariant");
    let b = dualizing_bound_report(&s3, &[rho]).map_err(|e| e.to_string())?;
    ensure!((b.lhs, b.rhs) == (0, 0), "hexagon S_3: {} <= {}", b.lhs, b.rhs);
    ensure!(b.shapiro_holds, "Shapiro shadow fails for S_3");
    let (z3, rho) = hexagon_action(&[vec![1, 2, 0]]);
    let b = dualizing_bound_report(&z3, &[rho]).map_err(|e| e.to_string())?;
    ensure!((b.lhs, b.rhs) == (1, 1), "hexagon Z/3: {} <= {}", b.lhs, b.rhs);
    ensure!(b.shapiro_holds, "Shapiro shadow fails for Z/3");
    let q =
        rose_quotient(&z3.complex, Some(&z3), &[0, 1, 2].map(|i| z3.group.orbit(rho)[i])).map_err(|e| e.to_string())?;
    ensure!(q.isomorphic_to_dualizing_module, "rose quotient differs from D");

    let mut r = rng(8);
    let mut equalities = 0;
    for _ in 0..100 {
        let f = random_symmetric_fixture(&mut r);
        let b = dualizing_bound_report(&f.action, &f.representatives).map_err(|e| format!("{}: {e}", f.name))?;
        ensure!(b.holds, "{}: lhs {} > rhs {}", f.name, b.lhs, b.rhs);
        ensure!(b.shapiro_holds, "{}: Shapiro shadow fails", f.name);
        ensure!(b.surjection_verified, "{}: R_G -> D_G not onto", f.name);
        ensure!(
            b.lhs == b.lhs_from_cosheaf,
            "{}: two computations of lhs differ",
            f.name
        );
        equalities += usize::from(b.equality);
    }
    Ok(format!(
        "fixtures exact; 100 random symmetric fixtures, {equalities} with equality"
    ))
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    for (name, x) in locally_cm_fixtures() {
        let n = x.dim().unwrap();
        let all = Selection::all(&x);
        let sheaf = local_homology_sheaf(&x, n);
        let cosheaf = local_cohomology_cosheaf(&x, n);
        let gamma = sheaf_cochain_complex(&x, &sheaf.system, &all)
            .map_err(|e| e.to_string())?
            .groups()
            .get(0);
        let h0 = cosheaf_chain_complex(&x, &cosheaf.system, &all)
            .map_err(|e| e.to_string())?
            .groups()
            .get(0);
        if h0.is_free() {
            let dual = compactly_determined_dual(&gamma);
            ensure!(
                h0.free_rank == dual.free_rank,
                "{name}: rank H_0(X;h^n) = {} but Hom(Γ,Z) has rank {}",
                h0.free_rank,
                dual.free_rank
            );
            checked += 1;
        }
        // Filtration by full subcomplexes on growing vertex prefixes.
        let filtration: Vec<Selection> = (1..=x.vertex_count())
            .map(|k| Selection::spanned_by(&x, &(0..k).collect::<Vec<_>>()))
            .collect();
        let ml = mittag_leffler_check(&x, &sheaf.system, &filtration).map_err(|e| e.to_string())?;
        ensure!(ml.semistable_within_range, "{name}: not semistable");
    }
    Ok(format!(
        "{checked} fixtures with free H_0(X;h^n); all filtrations semistable"
    ))
}

fn criterion_10() -> Outcome {
    let mut r = rng(10);
    let start = Instant::now();
    let mut total = Duration::ZERO;
    for i in 0..1000 {
        let rows = r.gen_range(1..=30);
        let cols = r.gen_range(1..=30);
        let bound = r.gen_range(1..=20i64);
        let density: f64 = r.gen_range(0.1..1.0);
        let a = IntMatrix::from_fn(rows, cols, |_, _| {
            if r.gen_bool(density) {
                BigInt::from(r.gen_range(-bound..=bound))
            } else {
                BigInt::zero()
            }
        });
        let t = Instant::now();
        let s = SmithForm::compute(&a);
        total += t.elapsed();
        ensure!(s.u.mul(&a).mul(&s.v) == s.d, "matrix {i}: U A V != D");
        ensure!(
            s.u.mul(&s.u_inv) == IntMatrix::identity(rows),
            "matrix {i}: U U^-1 != I"
        );
        ensure!(
            s.v.mul(&s.v_inv) == IntMatrix::identity(cols),
            "matrix {i}: V V^-1 != I"
        );
        let det_u = common::bareiss_det(&to_rows(&s.u)).magnitude().clone();
        let det_v = common::bareiss_det(&to_rows(&s.v)).magnitude().clone();
        ensure!(det_u.is_one() && det_v.is_one(), "matrix {i}: U or V not unimodular");
        let diag = s.diagonal();
        for (k, w) in diag.windows(2).enumerate() {
            ensure!(
                w[1].is_multiple_of(&w[0]),
                "matrix {i}: d_{k} does not divide d_{}",
                k + 1
            );
        }
        for p in 0..rows {
            for q in 0..cols {
                ensure!(p == q || s.d.get(p, q).is_zero(), "matrix {i}: D not diagonal");
            }
        }
        ensure!(
            diag.len() == common::rank_q(&to_i64(&a)),
            "matrix {i}: rank differs from oracle"
        );
    }
    ensure!(total < SNF_LIMIT, "SNF took {total:?}");
    Ok(format!(
        "1000 matrices, SNF time {total:.2?} (with checks {:.2?})",
        start.elapsed()
    ))
}

fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn to_i64(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_i64_rows().expect("small entries")
}

fn run(number: usize, title: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    match &outcome {
        Ok(detail) => println!("criterion {number:>2} PASS  {title}: {detail} [{elapsed:.2?}]"),
        Err(detail) => println!("criterion {number:>2} FAIL  {title}: {detail} [{elapsed:.2?}]"),
    }
    outcome.is_ok()
}

fn main() {
    let corpus = link_corpus();
    let results = [
        run(1, "duality suite", criterion_1),
        run(2, "cap chain-map law", criterion_2),
        run(3, "local homology vs link", || criterion_3(&corpus)),
        run(4, "constant coefficients", || criterion_4(&corpus)),
        run(5, "visible irreducibility crosscheck", criterion_5),
        run(6, "poset suite", criterion_6),
        run(7, "relative duality", criterion_7),
        run(8, "equivariant suite", criterion_8),
        run(9, "semistability", criterion_9),
        run(10, "Smith normal form", criterion_10),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
