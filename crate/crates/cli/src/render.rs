//! Result values and their text/JSON renderings.

use reesmod::{Fraction, Ideal, Polynomial};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::diag::Diagnostic;

#[derive(Debug, Clone)]
pub enum Value {
    Bool(bool),
    Int(u64),
    /// Text that must agree under `--field-check`.
    Label(String),
    /// Informational text, skipped by `--field-check`.
    Text(String),
    Ideal(Ideal),
    Poly(Polynomial),
    Frac(Fraction),
    List(Vec<Value>),
    Record(Vec<(String, Value)>),
}

impl Value {
    pub fn record(fields: Vec<(&str, Value)>) -> Value {
        Value::Record(
            fields
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        )
    }

    fn scalar(&self) -> Option<String> {
        Some(match self {
            Value::Bool(b) => b.to_string(),
            Value::Int(n) => n.to_string(),
            Value::Label(s) | Value::Text(s) => s.clone(),
            Value::Ideal(i) => i.to_string(),
            Value::Poly(p) => p.to_string(),
            Value::Frac(f) => f.to_string(),
            Value::List(_) | Value::Record(_) => return None,
        })
    }

    /// `key: value` lines, nesting by two spaces.
    pub fn write_text(&self, key: &str, indent: usize, out: &mut String) {
        let pad = " ".repeat(indent);
        if let Some(s) = self.scalar() {
            out.push_str(&format!("{pad}{key}: {s}\n"));
            return;
        }
        match self {
            Value::List(items) if items.iter().all(|v| v.scalar().is_some()) => {
                let parts: Vec<String> = items.iter().filter_map(Value::scalar).collect();
                out.push_str(&format!("{pad}{key}: [{}]\n", parts.join(", ")));
            }
            Value::List(items) => {
                out.push_str(&format!("{pad}{key}:\n"));
                for item in items {
                    let mut body = String::new();
                    match item {
                        Value::Record(fields) => {
                            for (k, v) in fields {
                                v.write_text(k, indent + 4, &mut body);
                            }
                        }
                        other => other.write_text("item", indent + 4, &mut body),
                    }
                    // first line of each item carries the dash
                    let body = body.replacen(&" ".repeat(indent + 4), &format!("{pad}  - "), 1);
                    out.push_str(&body);
                }
            }
            Value::Record(fields) => {
                out.push_str(&format!("{pad}{key}:\n"));
                for (k, v) in fields {
                    v.write_text(k, indent + 2, out);
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Bool(b) => s.serialize_bool(*b),
            Value::Int(n) => s.serialize_u64(*n),
            Value::Ideal(i) => {
                let mut seq = s.serialize_seq(Some(i.generators().len()))?;
                for g in i.generators() {
                    seq.serialize_element(&g.to_string())?;
                }
                seq.end()
            }
            Value::List(items) => {
                let mut seq = s.serialize_seq(Some(items.len()))?;
                for v in items {
                    seq.serialize_element(v)?;
                }
                seq.end()
            }
            Value::Record(fields) => {
                let mut map = s.serialize_map(Some(fields.len()))?;
                for (k, v) in fields {
                    map.serialize_entry(k, v)?;
                }
                map.end()
            }
            other => s.serialize_str(&other.scalar().expect("scalar")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Input {
    pub arg: String,
    pub value: String,
}

#[derive(Debug, Clone)]
pub struct FieldCheck {
    pub field: String,
    pub status: &'static str,
    pub detail: Option<String>,
}

impl Serialize for FieldCheck {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("field", &self.field)?;
        map.serialize_entry("status", self.status)?;
        if let Some(d) = &self.detail {
            map.serialize_entry("detail", d)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub command: String,
    pub inputs: Vec<Input>,
    pub result: Value,
    pub timing_ms: f64,
    pub field_check: Option<FieldCheck>,
}

pub enum Event {
    Result(Outcome),
    Diagnostic(Diagnostic),
}

pub fn text(events: &[Event], timing: bool) -> String {
    let mut out = String::new();
    for e in events {
        match e {
            Event::Diagnostic(d) => {
                out.push_str(&d.to_string());
                out.push('\n');
            }
            Event::Result(o) => {
                let args: Vec<&str> = o.inputs.iter().map(|i| i.arg.as_str()).collect();
                if o.command == "value" {
                    out.push_str(&format!("> {}\n", args.join(", ")));
                } else {
                    out.push_str(&format!("> {}({})\n", o.command, args.join(", ")));
                }
                if let Value::Record(fields) = &o.result {
                    for (k, v) in fields {
                        v.write_text(k, 0, &mut out);
                    }
                } else {
                    o.result.write_text("value", 0, &mut out);
                }
                if let Some(fc) = &o.field_check {
                    out.push_str(&format!("field_check: {} over {}", fc.status, fc.field));
                    if let Some(d) = &fc.detail {
                        out.push_str(&format!(" ({d})"));
                    }
                    out.push('\n');
                }
                if timing {
                    out.push_str(&format!("time: {:.3} ms\n", o.timing_ms));
                }
            }
        }
    }
    out
}

struct JsonResult<'a>(&'a Outcome, bool);

impl Serialize for JsonResult<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let o = self.0;
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("command", &o.command)?;
        map.serialize_entry("inputs", &o.inputs)?;
        map.serialize_entry("result", &o.result)?;
        if let Some(fc) = &o.field_check {
            map.serialize_entry("field_check", fc)?;
        }
        if self.1 {
            map.serialize_entry("timing_ms", &((o.timing_ms * 1000.0).round() / 1000.0))?;
        }
        map.end()
    }
}

struct JsonDoc<'a>(&'a [Event], bool);

impl Serialize for JsonDoc<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let results: Vec<JsonResult> = self
            .0
            .iter()
            .filter_map(|e| match e {
                Event::Result(o) => Some(JsonResult(o, self.1)),
                _ => None,
            })
            .collect();
        let diags: Vec<&Diagnostic> = self
            .0
            .iter()
            .filter_map(|e| match e {
                Event::Diagnostic(d) => Some(d),
                _ => None,
            })
            .collect();
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("results", &results)?;
        map.serialize_entry("diagnostics", &diags)?;
        map.end()
    }
}

pub fn json(events: &[Event], timing: bool) -> String {
    let mut s = serde_json::to_string_pretty(&JsonDoc(events, timing)).expect("values serialize");
    s.push('\n');
    s
}
