//! Batch interpreter for `.rees` scripts.

pub mod ast;
pub mod diag;
pub mod exec;
pub mod lexer;
pub mod parser;
pub mod render;

use reesmod::modification::DEFAULT_NMAX;
use reesmod::{Field, Fraction, Ideal, Polynomial};

use crate::diag::{Diagnostic, Severity};
use crate::exec::Interpreter;
use crate::render::{Event, FieldCheck, Outcome, Value};

pub use crate::parser::parse;

#[derive(Debug, Clone)]
pub struct Options {
    pub json: bool,
    pub timing: bool,
    pub nmax: u32,
    /// Prime for the `--field-check` shadow run.
    pub field_check: Option<u64>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            json: false,
            timing: true,
            nmax: DEFAULT_NMAX,
            field_check: None,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_DIAGNOSTICS: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub stdout: String,
    pub exit_code: i32,
}

type ShadowRun = Option<Result<Outcome, String>>;

/// Statement results in source order, with diagnostics interleaved by offset.
pub fn execute(source: &str, options: &Options) -> (Vec<Event>, bool) {
    let (script, parse_diags) = parse(source);
    let mut keyed: Vec<(usize, Event)> = parse_diags
        .into_iter()
        .map(|d| (d.offset, Event::Diagnostic(d)))
        .collect();
    let mut internal = false;

    let shadow: Option<(Field, Vec<ShadowRun>)> = options.field_check.map(|p| {
        let field = Field::prime(p).expect("validated by the caller");
        let mut sh = Interpreter::new(options.nmax, Some(field));
        let runs = script
            .stmts
            .iter()
            .map(|s| match sh.run(s) {
                Ok(Some(o)) => Some(Ok(o)),
                Ok(None) => None,
                Err(f) => Some(Err(f.diag.message)),
            })
            .collect();
        (field, runs)
    });

    let mut interp = Interpreter::new(options.nmax, None);
    for (k, stmt) in script.stmts.iter().enumerate() {
        match interp.run(stmt) {
            Ok(Some(mut outcome)) => {
                let mut warning = None;
                if let Some((field, runs)) = &shadow {
                    let check = field_check(&outcome, runs[k].as_ref(), *field);
                    if check.status != "agree" {
                        let msg = format!(
                            "field check over {}: {}{}",
                            check.field,
                            check.status,
                            check
                                .detail
                                .as_ref()
                                .map(|d| format!(" ({d})"))
                                .unwrap_or_default()
                        );
                        warning = Some(Diagnostic::warning(stmt.span, msg));
                    }
                    outcome.field_check = Some(check);
                }
                keyed.push((stmt.span.start, Event::Result(outcome)));
                if let Some(w) = warning {
                    keyed.push((stmt.span.start, Event::Diagnostic(w)));
                }
            }
            Ok(None) => {}
            Err(f) => {
                internal |= f.internal;
                keyed.push((f.diag.offset, Event::Diagnostic(f.diag)));
            }
        }
    }
    keyed.sort_by_key(|(off, _)| *off);
    (keyed.into_iter().map(|(_, e)| e).collect(), internal)
}

pub fn run(source: &str, options: &Options) -> RunOutput {
    let (events, internal) = execute(source, options);
    let has_errors = events
        .iter()
        .any(|e| matches!(e, Event::Diagnostic(d) if d.severity == Severity::Error));
    let stdout = if options.json {
        render::json(&events, options.timing)
    } else {
        render::text(&events, options.timing)
    };
    let exit_code = if internal {
        EXIT_INTERNAL
    } else if has_errors {
        EXIT_DIAGNOSTICS
    } else {
        EXIT_OK
    };
    RunOutput { stdout, exit_code }
}

fn field_check(
    main: &Outcome,
    shadow: Option<&Result<Outcome, String>>,
    field: Field,
) -> FieldCheck {
    let name = field.to_string();
    let (status, detail) = match shadow {
        None => ("skipped", Some("no shadow result".to_string())),
        Some(Err(msg)) => ("skipped", Some(msg.clone())),
        Some(Ok(sh)) => match agree(&main.result, &sh.result) {
            Some(true) => ("agree", None),
            Some(false) => ("disagree", None),
            None => (
                "skipped",
                Some("a coefficient does not reduce modulo p".to_string()),
            ),
        },
    };
    FieldCheck {
        field: name,
        status,
        detail,
    }
}

/// Compares a result with its shadow over GF(p). `None` when the reduction is undefined.
fn agree(a: &Value, b: &Value) -> Option<bool> {
    match (a, b) {
        (Value::Bool(x), Value::Bool(y)) => Some(x == y),
        (Value::Int(x), Value::Int(y)) => Some(x == y),
        (Value::Label(x), Value::Label(y)) => Some(x == y),
        (Value::Text(_), Value::Text(_)) => Some(true),
        (Value::Ideal(x), Value::Ideal(y)) => ideals_agree(x, y),
        (Value::Poly(x), Value::Poly(y)) => Some(&x.reduce_into(y.ring())? == y),
        (Value::Frac(x), Value::Frac(y)) => fractions_agree(x, y),
        (Value::List(xs), Value::List(ys)) => {
            if xs.len() != ys.len() {
                return Some(false);
            }
            let mut all = true;
            for (x, y) in xs.iter().zip(ys) {
                all &= agree(x, y)?;
            }
            Some(all)
        }
        (Value::Record(xs), Value::Record(ys)) => {
            if xs.len() != ys.len() {
                return Some(false);
            }
            let mut all = true;
            for ((kx, x), (ky, y)) in xs.iter().zip(ys) {
                all &= kx == ky && agree(x, y)?;
            }
            Some(all)
        }
        _ => Some(false),
    }
}

fn ideals_agree(x: &Ideal, y: &Ideal) -> Option<bool> {
    let gens = x
        .generators()
        .iter()
        .map(|g| g.reduce_into(y.ring()))
        .collect::<Option<Vec<Polynomial>>>()?;
    let reduced = Ideal::new(y.ring(), gens).ok()?;
    reduced.equals(y).ok()
}

fn fractions_agree(x: &Fraction, y: &Fraction) -> Option<bool> {
    let num = x.num().reduce_into(y.ring())?;
    let den = x.den().reduce_into(y.ring())?;
    if den.is_zero() {
        return None;
    }
    Fraction::new(num, den).ok()?.equals(y).ok()
}

/// Options named on a leading `// reesmod: ...` line, as used by the golden corpus.
/// Timing is always off.
pub fn header_options(source: &str) -> Options {
    let mut o = Options {
        timing: false,
        ..Options::default()
    };
    let Some(flags) = source
        .lines()
        .next()
        .and_then(|l| l.trim().strip_prefix("// reesmod:"))
    else {
        return o;
    };
    let mut it = flags.split_whitespace();
    while let Some(flag) = it.next() {
        match flag {
            "--json" => o.json = true,
            "--nmax" => o.nmax = it.next().and_then(|n| n.parse().ok()).unwrap_or(o.nmax),
            "--field-check" => {
                o.field_check = it
                    .next()
                    .and_then(|f| f.strip_prefix("GF(")?.strip_suffix(')')?.parse().ok())
            }
            _ => {}
        }
    }
    o
}
