//! The report envelope shared by every command, and its table rendering.

use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub status: Status,
    pub results: Value,
    pub warnings: Vec<String>,
    pub timing: Timing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    ValidationError,
    PreconditionFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::ValidationError => 2,
            Status::PreconditionFailed => 3,
        }
    }
}

/// SHA-256 over the inputs, each prefixed by its length so that
/// concatenation boundaries are unambiguous.
pub fn digest(inputs: &[Vec<u8>]) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

/// Human-readable rendering: nested objects become indented `key: value`
/// lines, arrays of objects become aligned tables.
pub fn render_table(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", report.command);
    let _ = writeln!(
        out,
        "status:  {}",
        serde_json::to_value(report.status)
            .unwrap_or_default()
            .as_str()
            .unwrap_or("")
    );
    let _ = writeln!(out, "digest:  {}", report.input_digest);
    render_value(&mut out, &report.results, 0);
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    let _ = writeln!(out, "elapsed: {:.1} ms", report.timing.elapsed_ms);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => Some(format!(
            "[{}]",
            items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        Value::Object(m) if m.values().all(|i| !i.is_object() && !i.is_array()) && m.len() <= 8 => Some(format!(
            "{{{}}}",
            m.iter()
                .map(|(k, v)| format!("{k}: {}", scalar(v).unwrap_or_default()))
                .collect::<Vec<_>>()
                .join(", ")
        )),
        _ => None,
    }
}

fn is_flat_object(v: &Value) -> bool {
    v.as_object().is_some_and(|m| m.values().all(|i| scalar(i).is_some()))
}

fn render_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, item) in m {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_value(out, item, indent + 1);
                    }
                }
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(is_flat_object) => render_rows(out, items, indent),
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render_value(out, item, indent + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

fn render_rows(out: &mut String, rows: &[Value], indent: usize) {
    let pad = "  ".repeat(indent);
    let mut columns: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().into_iter().flat_map(|m| m.keys()) {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            columns
                .iter()
                .map(|c| r.get(c).and_then(scalar).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            cells
                .iter()
                .map(|r| r[i].chars().count())
                .chain([c.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |vals: &[String]| {
        vals.iter()
            .zip(&widths)
            .map(|(v, w)| format!("{v:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let _ = writeln!(out, "{pad}{}", line(&columns));
    for r in &cells {
        let _ = writeln!(out, "{pad}{}", line(r));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn digest_separates_inputs() {
        assert_ne!(
            digest(&[b"ab".to_vec(), b"c".to_vec()]),
            digest(&[b"a".to_vec(), b"bc".to_vec()])
        );
        assert_eq!(digest(&[b"x".to_vec()]), digest(&[b"x".to_vec()]));
    }

    #[test]
    fn table_aligns_rows() {
        let report = Report {
            command: "t".into(),
            input_digest: "00".into(),
            status: Status::Ok,
            results: json!({"rows": [{"a": 1, "b": "Z"}, {"a": 22, "b": "Z/2"}]}),
            warnings: vec![],
            timing: Timing { elapsed_ms: 0.0 },
        };
        let text = render_table(&report);
        assert!(text.contains("a   b"));
        assert!(text.contains("22  Z/2"));
    }

    #[test]
    fn nested_rows_render_as_blocks() {
        let report = Report {
            command: "t".into(),
            input_digest: "00".into(),
            status: Status::Ok,
            results: json!({"rows": [{"a": 1, "inner": [{"x": 1, "y": {"z": [1, [2]]}}]}]}),
            warnings: vec![],
            timing: Timing { elapsed_ms: 0.0 },
        };
        let text = render_table(&report);
        assert!(text.contains("    a: 1\n"));
        assert!(text.contains("        x: 1\n"));
        assert!(!text.contains('"'));
    }
}
