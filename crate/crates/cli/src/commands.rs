//! Command implementations. Each returns the `results` value of the report.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use cmkit_core::algebra::IntMatrix;
use cmkit_core::coefficients::{cosheaf_homology, mittag_leffler_check, sections, sheaf_cohomology, validate_system};
use cmkit_core::complex::{Label, Selection};
use cmkit_core::corpus;
use cmkit_core::duality::{
    chain_map_signs, duality_report, fundamental_class, relative_duality_report, Convention, DualityError,
};
use cmkit_core::equivariant::{
    coinvariants, dualizing_bound_report, rose_quotient, top_resolution, validate_poset_action, ComplexAction,
    EquivariantError, ModuleWithAction, Ring,
};
use cmkit_core::fixtures;
use cmkit_core::io::{self, InputKind};
use cmkit_core::local::{
    cm_verdict, local_chain_complex_at, local_cohomology_cosheaf, local_homology_sheaf, LocalSystem, SystemKind,
};
use cmkit_core::poset::{
    link_join_decomposition, monotone_retraction, quillen_fiber_report, thickened_spine, FinitePoset, IntervalKind,
    PosetError,
};
use cmkit_core::vi::{vi_characterization_crosscheck, vi_verdict};
use cmkit_core::{GradedGroups, OrientedComplex};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::args::{Command, ConventionArg, EquivariantCommand, PosetCommand, RingArg, SampleKind, SystemArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{message}")]
    Precondition { message: String, details: Value },
}

fn validation(context: impl Display, e: impl Display) -> CliError {
    CliError::Validation(format!("{context}: {e}"))
}

fn precondition(e: impl Display) -> CliError {
    CliError::Precondition {
        message: e.to_string(),
        details: Value::Null,
    }
}

fn to_json(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Inputs read so far (for the digest) and warnings collected on the way.
#[derive(Default)]
pub struct Context {
    pub inputs: Vec<Vec<u8>>,
    pub warnings: Vec<String>,
    pub seed: u64,
}

impl Context {
    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = fs::read(path).map_err(|e| validation(path.display(), e))?;
        self.inputs.push(bytes.clone());
        String::from_utf8(bytes).map_err(|e| validation(path.display(), e))
    }

    fn complex(&mut self, path: &Path) -> Result<OrientedComplex, CliError> {
        let text = self.read(path)?;
        let (x, warnings) = io::parse_complex(&text).map_err(|e| validation(path.display(), e))?;
        self.warnings
            .extend(warnings.iter().map(|w| format!("{}: {w}", path.display())));
        Ok(x)
    }

    fn poset(&mut self, path: &Path) -> Result<FinitePoset, CliError> {
        let text = self.read(path)?;
        io::parse_poset(&text).map_err(|e| validation(path.display(), e))
    }

    fn action(&mut self, path: &Path, labels: &[Label]) -> Result<Vec<Vec<usize>>, CliError> {
        let text = self.read(path)?;
        io::parse_action(&text)
            .and_then(|a| a.permutations(labels))
            .map_err(|e| validation(path.display(), e))
    }

    fn complex_action(&mut self, x: &OrientedComplex, path: &Path) -> Result<ComplexAction, CliError> {
        let gens = self.action(path, x.labels())?;
        ComplexAction::new(x.clone(), gens).map_err(equivariant_error)
    }

    fn system(&mut self, x: &OrientedComplex, args: &SystemArgs, kind: SystemKind) -> Result<LocalSystem, CliError> {
        if let Some(path) = &args.system {
            let text = self.read(path)?;
            let f = io::parse_local_system(&text, x).map_err(|e| validation(path.display(), e))?;
            if f.kind != kind {
                return Err(validation(
                    path.display(),
                    format!("expected a {kind:?}, got a {:?}", f.kind),
                ));
            }
            let report = validate_system(x, &f).map_err(|e| validation(path.display(), e))?;
            if !report.valid {
                return Err(CliError::Validation(format!(
                    "{}: coefficient system does not commute: {}",
                    path.display(),
                    to_json(&report.witness)
                )));
            }
            return Ok(f);
        }
        Ok(match (args.local, kind) {
            (Some(n), SystemKind::Sheaf) => local_homology_sheaf(x, n).system,
            (Some(n), SystemKind::Cosheaf) => local_cohomology_cosheaf(x, n).system,
            (None, _) => LocalSystem::constant(x, kind),
        })
    }
}

fn labels(list: &str) -> Vec<Label> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().expect("infallible"))
        .collect()
}

/// Resolves a command-line label, which may name an integer or a string label.
fn resolve(l: &Label, find: impl Fn(&Label) -> Option<usize>) -> Option<usize> {
    find(l).or_else(|| find(&Label::Str(l.to_string())))
}

fn vertex_indices(x: &OrientedComplex, list: &str) -> Result<Vec<usize>, CliError> {
    labels(list)
        .iter()
        .map(|l| resolve(l, |l| x.vertex_index(l)).ok_or_else(|| CliError::Validation(format!("unknown vertex {l}"))))
        .collect()
}

fn element(p: &FinitePoset, name: &str) -> Result<usize, CliError> {
    let l: Label = name.trim().parse().expect("infallible");
    resolve(&l, |l| p.index_of(l)).ok_or_else(|| CliError::Validation(format!("unknown element {l}")))
}

fn elements(p: &FinitePoset, list: &str) -> Result<Vec<usize>, CliError> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| element(p, s))
        .collect()
}

/// Parses `a=b,c=d` into pairs of element indices of `from` and `to`.
fn poset_map(from: &FinitePoset, to: &FinitePoset, pairs: &str) -> Result<Vec<(usize, usize)>, CliError> {
    pairs
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (a, b) = pair
                .split_once('=')
                .ok_or_else(|| CliError::Validation(format!("map entry {pair:?} is not of the form a=b")))?;
            Ok((element(from, a)?, element(to, b)?))
        })
        .collect()
}

fn names(p: &FinitePoset, elems: &[usize]) -> Vec<String> {
    elems.iter().map(|&e| p.label(e).to_string()).collect()
}

fn poset_error(e: PosetError) -> CliError {
    match e {
        PosetError::UnknownElement(_) | PosetError::BadMapLength { .. } => CliError::Validation(e.to_string()),
        other => precondition(other),
    }
}

fn equivariant_error(e: EquivariantError) -> CliError {
    match e {
        EquivariantError::UnknownElement(_)
        | EquivariantError::WrongLength { .. }
        | EquivariantError::NotPermutation(_) => CliError::Validation(e.to_string()),
        EquivariantError::NotLocallyCm(ref offenses) => CliError::Precondition {
            message: e.to_string(),
            details: json!({ "offending_simplices": offenses }),
        },
        other => precondition(other),
    }
}

fn duality_error(x: &OrientedComplex, e: DualityError) -> CliError {
    match e {
        DualityError::UnknownVertex(_) | DualityError::CochainLength { .. } | DualityError::DegreeOutOfRange { .. } => {
            CliError::Validation(e.to_string())
        }
        other => CliError::Precondition {
            message: other.to_string(),
            details: cm_verdict(x).map(to_json).unwrap_or(Value::Null),
        },
    }
}

fn select(groups: &GradedGroups, degree: Option<isize>) -> Value {
    match degree {
        Some(k) => json!({ k.to_string(): groups.get(k).to_string() }),
        None => to_json(groups),
    }
}

pub fn run(command: &Command, ctx: &mut Context) -> Result<Value, CliError> {
    match command {
        Command::Homology {
            complex,
            reduced,
            degree,
        } => {
            let x = ctx.complex(complex)?;
            let groups = if *reduced { x.reduced_homology() } else { x.homology() };
            Ok(json!({
                "dimension": x.dim(),
                "f_vector": x.f_vector(),
                "euler_characteristic": x.euler_characteristic(),
                "reduced": reduced,
                "homology": select(&groups, *degree),
            }))
        }
        Command::Local { complex, degree } => {
            let x = ctx.complex(complex)?;
            let rows: Vec<Value> = (0..x.len())
                .map(|id| {
                    let c = local_chain_complex_at(&x, id).0;
                    let h = GradedGroups::from_nonnegative(c.homology());
                    let coh = GradedGroups::from_nonnegative(c.dual().cohomology());
                    json!({
                        "simplex": x.display_simplex(x.simplex(id)),
                        "local_homology": select(&h, *degree),
                        "local_cohomology": select(&coh, *degree),
                    })
                })
                .collect();
            Ok(json!({ "dimension": x.dim(), "simplices": rows }))
        }
        Command::CmCheck { complex } => {
            let x = ctx.complex(complex)?;
            cm_verdict(&x).map(to_json).map_err(precondition)
        }
        Command::SheafCohomology {
            complex,
            system,
            compact,
        } => {
            let x = ctx.complex(complex)?;
            let f = ctx.system(&x, system, SystemKind::Sheaf)?;
            let g = sheaf_cohomology(&x, &f, *compact).map_err(precondition)?;
            Ok(json!({ "coefficients": system_name(system), "cohomology": g }))
        }
        Command::CosheafHomology {
            complex,
            system,
            locally_finite,
        } => {
            let x = ctx.complex(complex)?;
            let f = ctx.system(&x, system, SystemKind::Cosheaf)?;
            let g = cosheaf_homology(&x, &f, *locally_finite).map_err(precondition)?;
            Ok(json!({ "coefficients": system_name(system), "homology": g }))
        }
        Command::Duality { complex } => {
            let x = ctx.complex(complex)?;
            duality_report(&x).map(to_json).map_err(|e| duality_error(&x, e))
        }
        Command::RelativeDuality { complex, l, convention } => {
            let x = ctx.complex(complex)?;
            let convention = match convention {
                ConventionArg::LFirst => Convention::LFirst,
                ConventionArg::LvcFirst => Convention::LvcFirst,
            };
            let l: Vec<Label> = vertex_indices(&x, l)?.into_iter().map(|v| x.label(v).clone()).collect();
            relative_duality_report(&x, &l, convention)
                .map(to_json)
                .map_err(|e| duality_error(&x, e))
        }
        Command::Sections {
            complex,
            system,
            filtration,
        } => sections_command(ctx, complex, system, filtration.as_deref()),
        Command::FundamentalCap {
            complex,
            degree,
            cochain,
        } => fundamental_cap(ctx, complex, *degree, cochain.as_deref()),
        Command::Poset(p) => poset_command(ctx, p),
        Command::Equivariant(e) => equivariant_command(ctx, e),
        Command::ViCheck { complex } => {
            let x = ctx.complex(complex)?;
            let verdict = vi_verdict(&x).map_err(precondition)?;
            let crosscheck = vi_characterization_crosscheck(&x).map_err(precondition)?;
            Ok(json!({
                "verdict": verdict.visibly_irreducible,
                "report": verdict,
                "crosscheck": crosscheck,
            }))
        }
        Command::Fixtures { dir } => write_fixtures(dir),
        Command::Sample { kind, max_vertices } => {
            let mut rng = corpus::rng(ctx.seed);
            let max = (*max_vertices).clamp(3, 12);
            Ok(match kind {
                SampleKind::TwoComplex => io::complex_to_json(&corpus::random_two_complex(&mut rng, max)),
                SampleKind::LocallyCm => io::complex_to_json(&corpus::random_locally_cm(&mut rng, max)),
                SampleKind::Poset => io::poset_to_json(&corpus::random_poset(&mut rng, max)),
            })
        }
        Command::Validate { input } => {
            let text = ctx.read(input)?;
            let kind: InputKind = io::validate(&text).map_err(|e| validation(input.display(), e))?;
            Ok(json!({ "valid": true, "kind": kind }))
        }
    }
}

fn system_name(args: &SystemArgs) -> String {
    match (&args.system, args.local) {
        (Some(p), _) => p.display().to_string(),
        (None, Some(n)) => format!("local degree {n}"),
        (None, None) => "constant".into(),
    }
}

fn sections_command(
    ctx: &mut Context,
    complex: &Path,
    system: &SystemArgs,
    filtration: Option<&Path>,
) -> Result<Value, CliError> {
    let x = ctx.complex(complex)?;
    let f = match (&system.system, system.local) {
        (None, None) => local_homology_sheaf(&x, x.dim().unwrap_or(0)).system,
        _ => ctx.system(&x, system, SystemKind::Sheaf)?,
    };
    let filtration = match filtration {
        Some(path) => {
            let text = ctx.read(path)?;
            io::parse_filtration(&text, &x).map_err(|e| validation(path.display(), e))?
        }
        None => (1..=x.vertex_count())
            .map(|k| Selection::spanned_by(&x, &(0..k).collect::<Vec<_>>()))
            .collect(),
    };
    let gamma = sections(&x, &f, &Selection::all(&x)).map_err(precondition)?;
    let ml = mittag_leffler_check(&x, &f, &filtration).map_err(precondition)?;
    let coefficients = match (&system.system, system.local) {
        (None, None) => format!("local degree {}", x.dim().unwrap_or(0)),
        _ => system_name(system),
    };
    Ok(json!({
        "coefficients": coefficients,
        "sections": gamma.group.to_string(),
        "mittag_leffler": ml,
    }))
}

fn fundamental_cap(
    ctx: &mut Context,
    complex: &Path,
    degree: Option<usize>,
    cochain: Option<&str>,
) -> Result<Value, CliError> {
    let x = ctx.complex(complex)?;
    let class = fundamental_class(&x).map_err(|e| duality_error(&x, e))?;
    let signs = chain_map_signs(&x).map_err(|e| duality_error(&x, e))?;
    let mut out = json!({
        "fundamental_class": {
            "degree": class.degree,
            "is_cycle": class.is_cycle,
            "class": class.class.as_ref().map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>()),
            "boundary_witness": class.boundary_witness,
            "generates": class.generates,
            "homology": class.homology.to_string(),
        },
        "signs": signs,
    });
    if let Some(values) = cochain {
        let l = degree.ok_or_else(|| CliError::Validation("--cochain needs --degree".into()))?;
        let psi: Vec<BigInt> = values
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                s.trim()
                    .parse::<BigInt>()
                    .map_err(|e| validation(format!("cochain entry {s:?}"), e))
            })
            .collect::<Result<_, _>>()?;
        let capped = cmkit_core::duality::cap_with_fundamental(&x, l, &psi).map_err(|e| duality_error(&x, e))?;
        out["cap"] = json!({
            "degree": l,
            "chain": capped.iter().map(ToString::to_string).collect::<Vec<_>>(),
        });
    }
    Ok(out)
}

fn poset_command(ctx: &mut Context, command: &PosetCommand) -> Result<Value, CliError> {
    match command {
        PosetCommand::OrderComplex { poset } => {
            let p = ctx.poset(poset)?;
            let x = p.order_complex();
            Ok(json!({
                "complex": io::complex_to_json(&x),
                "f_vector": x.f_vector(),
                "homology": x.homology(),
            }))
        }
        PosetCommand::Subdivide { poset } => {
            let p = ctx.poset(poset)?;
            let cp = p.chain_poset();
            let chains: Vec<Vec<String>> = cp.chains.iter().map(|c| names(&p, c)).collect();
            Ok(json!({
                "poset": io::poset_to_json(&cp.poset),
                "chains": chains,
                "homology": cp.poset.homology(),
                "homology_preserved": cp.poset.homology() == p.homology(),
            }))
        }
        PosetCommand::Interval {
            poset,
            below,
            above,
            open,
        } => {
            let p = ctx.poset(poset)?;
            let (kind, a, b) = match (below, above, open) {
                (Some(e), None, None) => (IntervalKind::Below, element(&p, e)?, None),
                (None, Some(e), None) => (IntervalKind::Above, element(&p, e)?, None),
                (None, None, Some(pair)) => {
                    let e = elements(&p, pair)?;
                    if e.len() != 2 {
                        return Err(CliError::Validation("--open takes two elements p,q".into()));
                    }
                    (IntervalKind::Open, e[0], Some(e[1]))
                }
                _ => {
                    return Err(CliError::Validation(
                        "give exactly one of --below, --above, --open".into(),
                    ))
                }
            };
            let sub = p.interval(kind, a, b).map_err(poset_error)?;
            Ok(json!({
                "kind": kind,
                "elements": names(&p, &sub.elements),
                "poset": io::poset_to_json(&sub.poset),
                "reduced_homology": sub.poset.reduced_homology(),
            }))
        }
        PosetCommand::LinkJoin { poset, chain } => {
            let p = ctx.poset(poset)?;
            let c = elements(&p, chain)?;
            let lj = link_join_decomposition(&p, &c).map_err(poset_error)?;
            let factors: Vec<Vec<String>> = lj.factors.iter().map(|f| names(&p, &f.elements)).collect();
            Ok(json!({
                "chain": names(&p, &lj.chain),
                "factors": factors,
                "link": io::complex_to_json(&lj.link),
                "link_f_vector": lj.link.f_vector(),
                "isomorphic": lj.isomorphic,
            }))
        }
        PosetCommand::Retraction { poset, map } => {
            let p = ctx.poset(poset)?;
            let mut r: Vec<usize> = (0..p.len()).collect();
            for (a, b) in poset_map(&p, &p, map)? {
                r[a] = b;
            }
            monotone_retraction(&p, &r).map(to_json).map_err(poset_error)
        }
        PosetCommand::FiberReport { source, target, map } => {
            let p = ctx.poset(source)?;
            let q = ctx.poset(target)?;
            let mut f: Vec<Option<usize>> = vec![None; p.len()];
            for (a, b) in poset_map(&p, &q, map)? {
                f[a] = Some(b);
            }
            let f: Vec<usize> = f
                .iter()
                .enumerate()
                .map(|(a, b)| b.ok_or_else(|| CliError::Validation(format!("map misses element {}", p.label(a)))))
                .collect::<Result<_, _>>()?;
            quillen_fiber_report(&p, &q, &f).map(to_json).map_err(poset_error)
        }
        PosetCommand::Thicken { poset, spine } => {
            let p = ctx.poset(poset)?;
            let s = elements(&p, spine)?;
            let t = thickened_spine(&p, &s).map_err(poset_error)?;
            let chain_names = |i: usize| names(&p, t.chain(i));
            let n = t.thickened.poset.len();
            Ok(json!({
                "spine": names(&p, &t.spine),
                "thickened": (0..n).map(chain_names).collect::<Vec<_>>(),
                "boundary": t.boundary.iter().map(|&i| chain_names(i)).collect::<Vec<_>>(),
                "chi": (0..n).map(|i| json!({"chain": chain_names(i), "image": chain_names(t.chi[i])})).collect::<Vec<_>>(),
                "report": t.verify(&p),
            }))
        }
    }
}

fn equivariant_command(ctx: &mut Context, command: &EquivariantCommand) -> Result<Value, CliError> {
    match command {
        EquivariantCommand::Orbits { input, action } => {
            let text = ctx.read(input)?;
            let kind = io::detect_kind(&text).map_err(|e| validation(input.display(), e))?;
            let (names_of, group, report) = match kind {
                InputKind::Poset => {
                    let p = io::parse_poset(&text).map_err(|e| validation(input.display(), e))?;
                    let gens = ctx.action(action, p.labels())?;
                    let report = validate_poset_action(&p, &gens).map_err(equivariant_error)?;
                    let a = ComplexAction::from_poset(&p, &gens).map_err(equivariant_error)?;
                    let labels: Vec<String> = a.complex.labels().iter().map(ToString::to_string).collect();
                    (labels, a.group, report)
                }
                InputKind::Complex => {
                    let (x, _) = io::parse_complex(&text).map_err(|e| validation(input.display(), e))?;
                    let a = ctx.complex_action(&x, action)?;
                    let report = a.report();
                    let labels: Vec<String> = x.labels().iter().map(ToString::to_string).collect();
                    (labels, a.group, report)
                }
                other => {
                    return Err(validation(
                        input.display(),
                        format!("expected a complex or poset, got {other:?}"),
                    ))
                }
            };
            let orbits: Vec<Value> = group
                .orbits()
                .iter()
                .map(|o| {
                    json!({
                        "elements": o.iter().map(|&v| names_of[v].clone()).collect::<Vec<_>>(),
                        "stabilizer_order": group.stabilizer(o[0]).len(),
                    })
                })
                .collect();
            Ok(json!({ "action": report, "group_order": group.order(), "orbits": orbits }))
        }
        EquivariantCommand::Resolution { complex, action } => {
            let x = ctx.complex(complex)?;
            let a = action.as_ref().map(|p| ctx.complex_action(&x, p)).transpose()?;
            top_resolution(&x, a.as_ref()).map(to_json).map_err(equivariant_error)
        }
        EquivariantCommand::RoseQuotient {
            complex,
            action,
            vertices,
        } => {
            let x = ctx.complex(complex)?;
            let a = action.as_ref().map(|p| ctx.complex_action(&x, p)).transpose()?;
            let v = vertex_indices(&x, vertices)?;
            rose_quotient(&x, a.as_ref(), &v)
                .map(to_json)
                .map_err(equivariant_error)
        }
        EquivariantCommand::Coinvariants {
            complex,
            action,
            degree,
            ring,
        } => {
            let x = ctx.complex(complex)?;
            let a = ctx.complex_action(&x, action)?;
            let top = x.dim().ok_or_else(|| precondition("the complex is empty"))?;
            let k = degree.unwrap_or(top);
            if k > top {
                return Err(CliError::Validation(format!("degree {k} exceeds the dimension {top}")));
            }
            let cochains = x.chain_complex().dual();
            let relations = if k == 0 {
                IntMatrix::zeros(x.count(0), 0)
            } else {
                cochains.coboundary(k - 1)
            };
            let matrices = (0..a.group.generators.len())
                .map(|g| a.cochain_matrix(a.generator_element(g), k))
                .collect();
            let module = ModuleWithAction {
                rank: x.count(k),
                relations,
                action: matrices,
            };
            let over = match ring {
                RingArg::Z => Ring::Z,
                RingArg::Q => Ring::Q,
            };
            let c = coinvariants(&module, over).map_err(equivariant_error)?;
            Ok(json!({
                "degree": k,
                "ring": over,
                "module": module.group().to_string(),
                "group_order": a.group.order(),
                "coinvariants": c,
            }))
        }
        EquivariantCommand::Bound {
            complex,
            action,
            representatives,
        } => {
            let x = ctx.complex(complex)?;
            let a = ctx.complex_action(&x, action)?;
            let reps = match representatives {
                Some(list) => vertex_indices(&x, list)?,
                None => default_representatives(&a),
            };
            dualizing_bound_report(&a, &reps)
                .map(to_json)
                .map_err(equivariant_error)
        }
    }
}

/// Smallest vertex of every orbit that contains the initial vertex of a top simplex.
fn default_representatives(a: &ComplexAction) -> Vec<usize> {
    let x = &a.complex;
    let Some(n) = x.dim() else { return Vec::new() };
    let initial: Vec<usize> = x.simplices_of_dim(n).iter().map(|s| s.vertices()[0]).collect();
    a.group
        .orbits()
        .into_iter()
        .filter(|o| o.iter().any(|v| initial.contains(v)))
        .filter_map(|o| o.into_iter().min())
        .collect()
}

fn shipped_complexes() -> Vec<(String, OrientedComplex)> {
    fixtures::named().into_iter().map(|(n, x)| (n.to_string(), x)).collect()
}

fn write_fixtures(dir: &PathBuf) -> Result<Value, CliError> {
    fs::create_dir_all(dir).map_err(|e| validation(dir.display(), e))?;
    let mut files: Vec<(String, Value)> = shipped_complexes()
        .into_iter()
        .map(|(name, x)| (format!("{name}.json"), io::complex_to_json(&x)))
        .collect();
    files.push((
        "subsets3-poset.json".into(),
        io::poset_to_json(&fixtures::subsets_poset(3)),
    ));
    files.push((
        "triangle-face-poset.json".into(),
        io::poset_to_json(&fixtures::triangle_face_poset()),
    ));
    for (name, action) in hexagon_actions() {
        files.push((name, action));
    }
    let mut written = Vec::new();
    for (name, value) in files {
        let path = dir.join(&name);
        let text = serde_json::to_string_pretty(&value).expect("json") + "\n";
        fs::write(&path, &text).map_err(|e| validation(path.display(), e))?;
        written.push(json!({
            "file": path.display().to_string(),
            "sha256": hex::encode(Sha256::digest(text.as_bytes())),
        }));
    }
    Ok(json!({ "directory": dir.display().to_string(), "files": written }))
}

/// Rotation (Z/3) and full symmetry (S_3) of the triangle, acting on the
/// hexagon as the order complex of its face poset.
fn hexagon_actions() -> Vec<(String, Value)> {
    let rotation = json!({"a": "b", "b": "c", "c": "a", "ab": "bc", "bc": "ac", "ac": "ab"});
    let reflection = json!({"a": "b", "b": "a", "ac": "bc", "bc": "ac"});
    vec![
        (
            "hexagon-z3-action.json".into(),
            json!({ "generators": [{ "perm": rotation }] }),
        ),
        (
            "hexagon-s3-action.json".into(),
            json!({ "generators": [{ "perm": rotation }, { "perm": reflection }] }),
        ),
    ]
}
