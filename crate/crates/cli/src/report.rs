//! Run reports and their JSON and text renderings.

use std::fmt::Write as _;

use chowres::{Rational, RingElement};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(check: &str, pass: bool, detail: impl Into<String>) -> Self {
        Verdict { check: check.into(), pass, detail: detail.into() }
    }
}

/// What a command computed, before the invocation is attached.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub inputs: Value,
    pub results: Value,
    pub verdicts: Vec<Verdict>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: Value,
    pub results: Value,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl RunReport {
    pub fn new(command: Vec<String>, outcome: Outcome, timing_ms: Option<f64>) -> Self {
        RunReport { command, inputs: outcome.inputs, results: outcome.results, verdicts: outcome.verdicts, timing_ms }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    /// Compact JSON with object keys in sorted order.
    pub fn to_json(&self) -> String {
        // Value maps are ordered by key
        serde_json::to_value(self).expect("report serializes").to_string()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command.join(" ")).unwrap();
        for (title, value) in [("inputs", &self.inputs), ("results", &self.results)] {
            writeln!(out, "{title}:").unwrap();
            render(&mut out, value, 1);
        }
        writeln!(out, "verdicts:").unwrap();
        if self.verdicts.is_empty() {
            writeln!(out, "  (none)").unwrap();
        }
        for v in &self.verdicts {
            let mark = if v.pass { "PASS" } else { "FAIL" };
            writeln!(out, "  [{mark}] {}: {}", v.check, v.detail).unwrap();
        }
        if let Some(ms) = self.timing_ms {
            writeln!(out, "timing_ms: {ms:.3}").unwrap();
        }
        out
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", items.iter().filter_map(scalar_text).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

/// Arrays of flat objects sharing one key set become aligned tables.
fn table(items: &[Value]) -> Option<(Vec<String>, Vec<Vec<String>>)> {
    let first = items.first()?.as_object()?;
    let keys: Vec<String> = first.keys().cloned().collect();
    let mut rows = Vec::new();
    for item in items {
        let obj = item.as_object()?;
        if obj.len() != keys.len() {
            return None;
        }
        rows.push(keys.iter().map(|k| obj.get(k).and_then(scalar_text)).collect::<Option<Vec<_>>>()?);
    }
    Some((keys, rows))
}

fn render(out: &mut String, value: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match scalar_text(v) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        render(out, v, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            if let Some((keys, rows)) = table(items) {
                let widths: Vec<usize> =
                    (0..keys.len()).map(|i| rows.iter().map(|r| r[i].len()).chain([keys[i].len()]).max().unwrap_or(0)).collect();
                let line = |cells: &[String]| {
                    cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join(" | ").trim_end().to_string()
                };
                writeln!(out, "{pad}{}", line(&keys)).unwrap();
                writeln!(out, "{pad}{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-")).unwrap();
                for r in &rows {
                    writeln!(out, "{pad}{}", line(r)).unwrap();
                }
            } else {
                for (i, item) in items.iter().enumerate() {
                    match scalar_text(item) {
                        Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                        None => {
                            writeln!(out, "{pad}- [{i}]").unwrap();
                            render(out, item, depth + 1);
                        }
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar_text(other).unwrap_or_default()).unwrap(),
    }
}

/// Integers as JSON numbers when they fit, everything else as `"p/q"` strings.
pub fn rational_value(x: &Rational) -> Value {
    if x.is_integer() {
        if let Some(n) = x.to_integer().to_i64() {
            return json!(n);
        }
    }
    json!(x.to_string())
}

/// `{"terms": [{"basis", "coefficient"}], "text"}` in basis order, nonzero terms only.
pub fn element_value(e: &RingElement) -> Value {
    let terms: Vec<Value> = e.terms().into_iter().map(|(name, c)| json!({"basis": name, "coefficient": rational_value(&c)})).collect();
    json!({"terms": terms, "text": e.to_string()})
}
