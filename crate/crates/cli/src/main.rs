//! `qreal`: arithmetic on string states, sequence generation, Cauchy and
//! order probes, and the worked demos.
//!
//! Exit codes: 0 success, 1 a checked property does not hold, 2 usage or
//! input error.

mod demo;
mod expr;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qreal::arith::{ell_inverse_state, Accuracy, Part};
use qreal::json::{ProbeReport, StateRecord, SuperpositionRecord};
use qreal::sequence::{cauchy_check, complex_order, seq_eq, seq_lt, trichotomy, Horizon, SequenceSpec};
use qreal::{eigenvalue, parse_compact, LatticeSite};

use demo::Demo;

#[derive(Parser, Debug)]
#[command(name = "qreal", version, about = "Exact arithmetic on qubit-string states")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Probe horizon as ell_max,h_max,window.
    #[arg(long, global = true, default_value = "8,32,8", value_parser = parse_horizon)]
    horizon: Horizon,

    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression such as "110+1 * 10+1" or "1+ /:7 101+".
    Eval { expr: String },
    /// The ell-inverse of a nonzero state.
    Invert {
        value: String,
        #[arg(long)]
        ell: u32,
    },
    /// Print the first elements of a sequence.
    SeqGen {
        /// JSON spec, @file with a JSON spec, or a compact literal for a constant.
        spec: String,
        #[arg(long, default_value_t = 8)]
        count: usize,
        /// Print terms as CSV rows (n, state, re, im, probability).
        #[arg(long)]
        csv: bool,
    },
    /// Check the Cauchy condition on the horizon.
    CauchyCheck {
        spec: String,
        /// Print the probe rows (ell, h, j, k, P) as CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Compare two sequences: equality, strict order, trichotomy.
    Compare {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value_t = PartArg::Real)]
        part: PartArg,
        /// Print the probe rows of the equality check as CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Run a worked example.
    Demo {
        #[arg(value_enum)]
        name: Demo,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PartArg {
    Real,
    Imaginary,
    Both,
}

impl From<PartArg> for Part {
    fn from(p: PartArg) -> Part {
        match p {
            PartArg::Real => Part::Real,
            PartArg::Imaginary => Part::Imaginary,
            PartArg::Both => Part::Both,
        }
    }
}

fn parse_horizon(s: &str) -> Result<Horizon, String> {
    s.parse().map_err(|e: qreal::Error| e.to_string())
}

/// What a command produced and whether its property held.
struct Outcome {
    text: String,
    json: serde_json::Value,
    holds: bool,
}

impl Outcome {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Outcome { text, json, holds: true }
    }
}

struct UsageError(String);

impl From<qreal::Error> for UsageError {
    fn from(e: qreal::Error) -> Self {
        UsageError(format!("error: {e}"))
    }
}

fn literal(text: &str) -> Result<qreal::StringState, UsageError> {
    parse_compact(text)
        .map_err(|e| UsageError(expr::ExprError { position: e.position, message: e.kind.to_string() }.render(text)))
}

fn load_spec(arg: &str) -> Result<SequenceSpec, UsageError> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| UsageError(format!("error: {path}: {e}")))?,
        None => arg.to_owned(),
    };
    if text.trim_start().starts_with('{') {
        return Ok(SequenceSpec::from_json(&text)?);
    }
    literal(text.trim())?;
    Ok(SequenceSpec::Constant { value: text.trim().to_owned() })
}

fn csv_text<T: serde::Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

fn report_text(title: &str, r: &ProbeReport) -> String {
    let mut out = format!("{title}: {}\n", serde_json::to_value(r.status).expect("status")).replace('"', "");
    if !r.witness.is_empty() {
        let w: Vec<String> = r.witness.iter().map(|(l, h)| format!("{l}->{h}")).collect();
        let _ = writeln!(out, "  witness h(ell): {}", w.join(" "));
    }
    if let Some((l, h)) = r.gap {
        let _ = writeln!(out, "  gap at ell = {l}, from index {h}");
    }
    if let Some(f) = r.refutation {
        let _ = writeln!(out, "  refuted at ell = {}, j = {}, k = {}: P = {:.6}", f.ell, f.j, f.k, f.probability);
    }
    if !r.rows.is_empty() {
        let _ = writeln!(out, "  {} probabilities evaluated", r.rows.len());
    }
    out
}

fn run(cli: &Cli) -> Result<Outcome, UsageError> {
    let hz = &cli.horizon;
    let site = LatticeSite::default();
    Ok(match &cli.command {
        Command::Eval { expr } => {
            let v = expr::evaluate(expr).map_err(|e| UsageError(e.render(expr)))?;
            let rec = StateRecord::from_state(&v);
            let text = format!("{} ({})\n", rec.text, rec.value);
            Outcome::ok(text, json!({ "expr": expr, "result": rec }))
        }
        Command::Invert { value, ell } => {
            let x = literal(value)?;
            let acc = Accuracy::new(*ell)?;
            let inv = ell_inverse_state(&x, acc)?;
            let product = &eigenvalue(&inv) * &eigenvalue(&x);
            let rec = StateRecord::from_state(&inv);
            let text = format!("{} ({})\nproduct {product}\n", rec.text, rec.value);
            Outcome::ok(text, json!({ "input": value, "ell": ell, "inverse": rec, "product": product.to_string() }))
        }
        Command::SeqGen { spec, count, csv } => {
            let spec = load_spec(spec)?;
            let seq = spec.build(site, hz)?;
            let elements: Vec<_> = (1..=*count).map(|n| (n, seq.at(n))).collect();
            let text = if *csv {
                #[derive(serde::Serialize)]
                struct Row {
                    n: usize,
                    state: String,
                    re: f64,
                    im: f64,
                    probability: f64,
                }
                let rows: Vec<Row> = elements
                    .iter()
                    .flat_map(|(n, psi)| {
                        psi.terms().map(move |(s, a)| Row {
                            n: *n,
                            state: s.to_string(),
                            re: a.re,
                            im: a.im,
                            probability: a.norm_sqr(),
                        })
                    })
                    .collect();
                csv_text(&rows)
            } else {
                let mut out = String::new();
                for (n, psi) in &elements {
                    let terms: Vec<String> = psi.probabilities().map(|(s, p)| format!("{p:.6} {s}")).collect();
                    let _ = writeln!(out, "{n:>4}  {}", terms.join("  "));
                }
                out
            };
            let json_elems: Vec<_> = elements
                .iter()
                .map(|(n, psi)| json!({ "n": n, "state": SuperpositionRecord::from_superposition(psi) }))
                .collect();
            Outcome::ok(text, json!({ "spec": spec, "elements": json_elems }))
        }
        Command::CauchyCheck { spec, csv } => {
            let spec = load_spec(spec)?;
            let seq = spec.build(site, hz)?;
            let v = cauchy_check(&seq, hz);
            let rep = ProbeReport::from_cauchy(spec.to_json(), &v);
            let text = if *csv { csv_text(&rep.rows) } else { report_text("cauchy", &rep) };
            Outcome { text, json: serde_json::to_value(&rep).expect("report"), holds: v.holds() }
        }
        Command::Compare { left, right, part, csv } => {
            let (ls, rs) = (load_spec(left)?, load_spec(right)?);
            let (a, b) = (ls.build(site, hz)?, rs.build(site, hz)?);
            let part = Part::from(*part);
            let subject = format!("{} vs {}", ls.to_json(), rs.to_json());
            let eq = ProbeReport::from_cauchy(subject.clone(), &seq_eq(&a, &b, part, hz));
            if part == Part::Both {
                let (re, im) = complex_order(&a, &b, hz);
                let names = serde_json::to_value((re, im)).expect("relations");
                let text = if *csv {
                    csv_text(&eq.rows)
                } else {
                    format!("real: {}\nimaginary: {}\n{}", names[0], names[1], report_text("equal", &eq))
                        .replace('"', "")
                };
                return Ok(Outcome::ok(text, json!({ "real": re, "imaginary": im, "eq": eq })));
            }
            let lt = ProbeReport::from_gap(subject.clone(), &seq_lt(&a, &b, part, hz));
            let gt = ProbeReport::from_gap(subject, &seq_lt(&b, &a, part, hz));
            let rel = trichotomy(&a, &b, part, hz);
            let text = if *csv {
                csv_text(&eq.rows)
            } else {
                let name = serde_json::to_value(rel).expect("relation");
                format!(
                    "relation: {}\n{}{}{}",
                    name.as_str().unwrap_or_default(),
                    report_text("equal", &eq),
                    report_text("less", &lt),
                    report_text("greater", &gt)
                )
            };
            Outcome::ok(text, json!({ "relation": rel, "eq": eq, "lt": lt, "gt": gt }))
        }
        Command::Demo { name } => {
            let rep = demo::run(*name, hz, cli.seed);
            Outcome { text: rep.render(), json: serde_json::to_value(&rep).expect("report"), holds: rep.passed }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Err(UsageError(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
            } else {
                print!("{}", out.text);
            }
            if out.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
