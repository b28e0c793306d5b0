//! JSON input formats.
//!
//! ```text
//! complex:      {"vertices": [v, ...], "facets": [[v, ...], ...]}
//! poset:        {"elements": [e, ...], "covers": [[a, b], ...]}
//! action:       {"generators": [{"perm": {"e": "e'", ...}}, ...]}
//! local system: {"kind": "sheaf" | "cosheaf",
//!                "values": [{"simplex": [v, ...], "rank": r}, ...],
//!                "maps": [{"face": [...], "coface": [...], "matrix": [[...]]}, ...]}
//! filtration:   {"filtration": [{"facets": [[v, ...], ...]}, ...]}
//! ```
//!
//! Labels are integers or strings. `"vertices"` is optional; when omitted
//! the vertex order is the sorted set of labels used by the facets.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{FgAbelianGroup, IntMatrix};
use crate::complex::{build_complex, BuildWarning, ComplexError, Label, OrientedComplex, Selection, Simplex};
use crate::local::{LocalSystem, SystemKind};
use crate::poset::{FinitePoset, PosetError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{location}: {message}")]
    Schema { location: String, message: String },
}

fn schema(location: impl Into<String>, message: impl ToString) -> IoError {
    IoError::Schema {
        location: location.into(),
        message: message.to_string(),
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| {
        if e.is_data() {
            schema(format!("line {}, column {}", e.line(), e.column()), e)
        } else {
            IoError::Json {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            }
        }
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Label>>,
    pub facets: Vec<Vec<Label>>,
}

impl ComplexFile {
    pub fn from_complex(x: &OrientedComplex) -> Self {
        Self {
            vertices: Some(x.labels().to_vec()),
            facets: x
                .maximal_simplices()
                .iter()
                .map(|&m| x.simplex_labels(x.simplex(m)))
                .collect(),
        }
    }

    pub fn build(&self) -> Result<(OrientedComplex, Vec<BuildWarning>), IoError> {
        let vertices = match &self.vertices {
            Some(v) => v.clone(),
            None => self
                .facets
                .iter()
                .flatten()
                .cloned()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        };
        let declared: BTreeSet<&Label> = vertices.iter().collect();
        for (i, f) in self.facets.iter().enumerate() {
            let location = format!("facets[{i}]");
            if f.is_empty() {
                return Err(schema(location, ComplexError::EmptySimplex));
            }
            let mut seen = BTreeSet::new();
            for l in f {
                if !declared.contains(l) {
                    return Err(schema(location, ComplexError::UnknownVertex(l.to_string())));
                }
                if !seen.insert(l) {
                    return Err(schema(location, ComplexError::RepeatedVertex(l.to_string())));
                }
            }
        }
        build_complex(&vertices, &self.facets).map_err(|e| schema("vertices", e))
    }
}

pub fn parse_complex(text: &str) -> Result<(OrientedComplex, Vec<BuildWarning>), IoError> {
    parse::<ComplexFile>(text)?.build()
}

pub fn complex_to_json(x: &OrientedComplex) -> Value {
    serde_json::to_value(ComplexFile::from_complex(x)).expect("serializable")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<Label>,
    #[serde(default)]
    pub covers: Vec<(Label, Label)>,
}

impl PosetFile {
    pub fn from_poset(p: &FinitePoset) -> Self {
        Self {
            elements: p.labels().to_vec(),
            covers: p
                .covers()
                .iter()
                .map(|&(a, b)| (p.label(a).clone(), p.label(b).clone()))
                .collect(),
        }
    }

    pub fn build(&self) -> Result<FinitePoset, IoError> {
        FinitePoset::from_labelled_covers(self.elements.clone(), &self.covers).map_err(|e| {
            let location = match &e {
                PosetError::DuplicateElement(_) => "elements".to_string(),
                PosetError::UnknownElement(l) | PosetError::RedundantCover(l, _) => self
                    .covers
                    .iter()
                    .position(|(a, b)| &a.to_string() == l || &b.to_string() == l)
                    .map_or("covers".to_string(), |i| format!("covers[{i}]")),
                _ => "covers".to_string(),
            };
            schema(location, e)
        })
    }
}

pub fn parse_poset(text: &str) -> Result<FinitePoset, IoError> {
    parse::<PosetFile>(text)?.build()
}

pub fn poset_to_json(p: &FinitePoset) -> Value {
    serde_json::to_value(PosetFile::from_poset(p)).expect("serializable")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub perm: BTreeMap<String, Label>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub generators: Vec<GeneratorSpec>,
}

impl ActionFile {
    /// Index permutations of `labels`; unmapped elements are fixed.
    pub fn permutations(&self, labels: &[Label]) -> Result<Vec<Vec<usize>>, IoError> {
        let index = |s: &str, loc: &str| {
            labels
                .iter()
                .position(|l| l.to_string() == s)
                .ok_or_else(|| schema(loc, format!("unknown element {s}")))
        };
        self.generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let loc = format!("generators[{i}].perm");
                let mut p: Vec<usize> = (0..labels.len()).collect();
                let mut hit = vec![false; labels.len()];
                for (a, b) in &g.perm {
                    let j = index(&b.to_string(), &loc)?;
                    if hit[j] {
                        return Err(schema(loc, format!("{b} is the image of two elements")));
                    }
                    hit[j] = true;
                    p[index(a, &loc)?] = j;
                }
                let mut check = p.clone();
                check.sort_unstable();
                if check.iter().enumerate().any(|(k, &v)| k != v) {
                    return Err(schema(loc, "map is not a permutation"));
                }
                Ok(p)
            })
            .collect()
    }
}

pub fn parse_action(text: &str) -> Result<ActionFile, IoError> {
    parse(text)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueSpec {
    pub simplex: Vec<Label>,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub face: Vec<Label>,
    pub coface: Vec<Label>,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalSystemFile {
    pub kind: SystemKind,
    #[serde(default)]
    pub values: Vec<ValueSpec>,
    #[serde(default)]
    pub maps: Vec<MapSpec>,
}

fn simplex_id(x: &OrientedComplex, labels: &[Label], loc: &str) -> Result<usize, IoError> {
    let idx: Vec<usize> = labels
        .iter()
        .map(|l| {
            x.vertex_index(l)
                .ok_or_else(|| schema(loc, ComplexError::UnknownVertex(l.to_string())))
        })
        .collect::<Result<_, _>>()?;
    let s = Simplex::new(idx).map_err(|e| schema(loc, e))?;
    x.id_of(&s)
        .ok_or_else(|| schema(loc, ComplexError::NotInComplex(x.display_simplex(&s))))
}

impl LocalSystemFile {
    /// Free values of the given ranks (unlisted simplices get 0) and maps on
    /// face-cofacet pairs (unlisted maps are zero).
    pub fn build(&self, x: &OrientedComplex) -> Result<LocalSystem, IoError> {
        let mut ranks = vec![0usize; x.len()];
        for (i, v) in self.values.iter().enumerate() {
            let loc = format!("values[{i}]");
            ranks[simplex_id(x, &v.simplex, &loc)?] = v.rank;
        }
        let mut maps = BTreeMap::new();
        for (i, m) in self.maps.iter().enumerate() {
            let loc = format!("maps[{i}]");
            let face = simplex_id(x, &m.face, &loc)?;
            let coface = simplex_id(x, &m.coface, &loc)?;
            if !x.cofacets(face).contains(&coface) {
                return Err(schema(loc, "coface is not a cofacet of face"));
            }
            let (rows, cols) = match self.kind {
                SystemKind::Sheaf => (ranks[coface], ranks[face]),
                SystemKind::Cosheaf => (ranks[face], ranks[coface]),
            };
            if m.matrix.len() != rows || m.matrix.iter().any(|r| r.len() != cols) {
                return Err(schema(loc, format!("matrix must be {rows}x{cols}")));
            }
            let mat = IntMatrix::from_fn(rows, cols, |r, c| BigInt::from(m.matrix[r][c]));
            maps.insert((face, coface), mat);
        }
        let values = ranks.iter().map(|&r| FgAbelianGroup::free(r)).collect();
        Ok(LocalSystem::new(self.kind, values, maps))
    }
}

pub fn parse_local_system(text: &str, x: &OrientedComplex) -> Result<LocalSystem, IoError> {
    parse::<LocalSystemFile>(text)?.build(x)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationFile {
    pub filtration: Vec<ComplexFile>,
}

/// Subcomplexes of `x`, each given by facets in `x`'s labels.
pub fn parse_filtration(text: &str, x: &OrientedComplex) -> Result<Vec<Selection>, IoError> {
    let f: FiltrationFile = parse(text)?;
    f.filtration
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let loc = format!("filtration[{i}]");
            let mut gens = Vec::new();
            for (j, facet) in c.facets.iter().enumerate() {
                let id = simplex_id(x, facet, &format!("{loc}.facets[{j}]"))?;
                gens.push(x.simplex(id).clone());
            }
            let sub = x.subcomplex(&gens).map_err(|e| schema(&loc, e))?;
            x.selection_of(&sub).map_err(|e| schema(&loc, e))
        })
        .collect()
}

/// Which documented format a JSON document claims to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputKind {
    Complex,
    Poset,
    Action,
    LocalSystem,
    Filtration,
}

pub fn detect_kind(text: &str) -> Result<InputKind, IoError> {
    let v: Value = parse(text)?;
    let obj = v
        .as_object()
        .ok_or_else(|| schema("$", "top level must be an object"))?;
    let kind = if obj.contains_key("facets") {
        InputKind::Complex
    } else if obj.contains_key("elements") {
        InputKind::Poset
    } else if obj.contains_key("generators") {
        InputKind::Action
    } else if obj.contains_key("kind") {
        InputKind::LocalSystem
    } else if obj.contains_key("filtration") {
        InputKind::Filtration
    } else {
        return Err(schema(
            "$",
            "expected one of the keys facets, elements, generators, kind, filtration",
        ));
    };
    Ok(kind)
}

/// Schema-only validation: parses the document as its detected kind
/// without running any computation beyond construction.
pub fn validate(text: &str) -> Result<InputKind, IoError> {
    let kind = detect_kind(text)?;
    match kind {
        InputKind::Complex => {
            parse_complex(text)?;
        }
        InputKind::Poset => {
            parse_poset(text)?;
        }
        InputKind::Action => {
            parse_action(text)?;
        }
        InputKind::LocalSystem => {
            parse::<LocalSystemFile>(text)?;
        }
        InputKind::Filtration => {
            parse::<FiltrationFile>(text)?;
        }
    }
    Ok(kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn complex_round_trip() {
        let x = fixtures::rp6();
        let text = complex_to_json(&x).to_string();
        let (y, warnings) = parse_complex(&text).unwrap();
        assert!(warnings.is_empty());
        assert_eq!(x, y);
    }

    #[test]
    fn vertices_optional() {
        let (x, _) = parse_complex(r#"{"facets": [["b","c"],["a","b"]]}"#).unwrap();
        assert_eq!(x.label(0), &Label::from("a"));
        assert_eq!(x.f_vector(), vec![3, 2]);
    }

    #[test]
    fn repeated_vertex_has_location() {
        let err = parse_complex(r#"{"vertices":[0,1,2],"facets":[[0,1],[1,1,2]]}"#).unwrap_err();
        assert_eq!(err.to_string(), "facets[1]: vertex 1 repeated inside a simplex");
    }

    #[test]
    fn poset_cycle_reported() {
        let err = parse_poset(r#"{"elements":["a","b","c"],"covers":[["a","b"],["b","c"],["c","a"]]}"#).unwrap_err();
        assert!(err.to_string().contains("cycle"), "{err}");
    }

    #[test]
    fn poset_round_trip() {
        let p = fixtures::subsets_poset(3);
        let q = parse_poset(&poset_to_json(&p).to_string()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn action_parsing() {
        let a = parse_action(r#"{"generators":[{"perm":{"0":1,"1":2,"2":0}}]}"#).unwrap();
        let labels: Vec<Label> = (0..3usize).map(Label::from).collect();
        assert_eq!(a.permutations(&labels).unwrap(), vec![vec![1, 2, 0]]);
        let bad = parse_action(r#"{"generators":[{"perm":{"0":1}}]}"#).unwrap();
        assert!(bad.permutations(&labels).is_err());
    }

    #[test]
    fn local_system_parsing() {
        let x = fixtures::path(1);
        let text = r#"{"kind":"sheaf","values":[{"simplex":[0],"rank":1},{"simplex":[1],"rank":1},{"simplex":[0,1],"rank":1}],
            "maps":[{"face":[0],"coface":[0,1],"matrix":[[1]]},{"face":[1],"coface":[0,1],"matrix":[[1]]}]}"#;
        let f = parse_local_system(text, &x).unwrap();
        assert_eq!(f.rank(2), 1);
        let bad = text.replace("[[1]]}]", "[[1,2]]}]");
        assert!(parse_local_system(&bad, &x)
            .unwrap_err()
            .to_string()
            .starts_with("maps[1]"));
    }

    #[test]
    fn detection_and_validation() {
        assert_eq!(validate(r#"{"facets":[[0,1]]}"#).unwrap(), InputKind::Complex);
        assert_eq!(validate(r#"{"elements":[1]}"#).unwrap(), InputKind::Poset);
        assert!(validate("{\"facets\": [").is_err());
        assert!(validate(r#"{"facets":[[0,1]],"extra":1}"#).is_err());
    }
}
