//! `gwpt`: expansions, verification suites and bracket tables.
//!
//! Exit codes: 0 success, 1 a check failed, 2 invalid flags, 3 a requested
//! truncation is too small for the computation.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gwpt::dressing::{a_tilde_apply, check_intertwine, solve_w, Intertwine};
use gwpt::engine::{one_leg_grid, pt_bracket, pt_bracket_limit, verify_one_leg, verify_with, BracketResult, GwEvaluator, OneLegReport};
use gwpt::fock::FockVector;
use gwpt::partitions::{partitions_up_to, Partition};
use gwpt::series::{Scalar, TruncSeries, Var};
use gwpt::vertex_ops::{hgw_hat, hpt_weights, lambert_w, PtSign};
use serde_json::{json, Value};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "gwpt", version, about = "Exact GW/PT descendent correspondence computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Expand an operator or series.
    Expand {
        #[arg(long, value_enum)]
        op: ExpandOp,
        /// Descendent index for `hgw` and `hpt`.
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i32>,
        /// Order in `(u/t)` of the dressing operator.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(i32).range(1..))]
        smax: i32,
        /// Order in `x` of the curve.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i32).range(1..))]
        xorder: i32,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Form of the PT descendents compared in the one-leg suite.
        #[arg(long, value_enum, default_value_t = PtForm::Generating)]
        op: PtForm,
        /// Boundary partition, e.g. `2,1`; `0` is the empty partition.
        #[arg(long)]
        mu: Option<String>,
        /// Descendent indices, e.g. `1,2`.
        #[arg(long, allow_hyphen_values = true)]
        kvec: Option<String>,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(i32).range(1..))]
        uorder: i32,
        /// Order in `(u/t)` of the dressing operator.
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(i32).range(1..))]
        smax: i32,
        /// Fock energy cap.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        energy: Option<u32>,
    },
    /// Tabulate brackets over a grid of boundary partitions and insertions.
    Table {
        /// Pipeline evaluated in every cell.
        #[arg(long, value_enum, default_value_t = TableOp::GwHgw)]
        op: TableOp,
        /// Boundary partitions, repeatable.
        #[arg(long, required = true)]
        mu: Vec<String>,
        /// Insertion vectors, repeatable.
        #[arg(long, required = true, allow_hyphen_values = true)]
        kvec: Vec<String>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        energy: Option<u32>,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, ValueEnum)]
enum ExpandOp {
    Hgw,
    Hpt,
    W,
    Curve,
}

#[derive(Copy, Clone, ValueEnum)]
enum Suite {
    OneLeg,
    Dressing,
    Commutators,
    All,
}

#[derive(Copy, Clone, ValueEnum)]
enum PtForm {
    Generating,
    Limit,
}

#[derive(Copy, Clone, ValueEnum)]
enum TableOp {
    GwHgw,
    GwTau,
    Pt,
    PtLimit,
}

/// A finished document and the exit code to return with it.
struct Outcome {
    doc: Value,
    text: String,
    code: u8,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn flags(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }

    fn truncation(message: impl Into<String>) -> Failure {
        Failure { code: 3, message: message.into() }
    }

    fn internal(e: impl std::fmt::Display) -> Failure {
        Failure { code: 1, message: e.to_string() }
    }
}

fn parse_mu(s: &str) -> Result<Partition, Failure> {
    Partition::parse(s).map_err(|e| Failure::flags(format!("--mu {s}: {e}")))
}

fn parse_kvec(s: &str) -> Result<Vec<i32>, Failure> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|k| k.trim().parse().map_err(|_| Failure::flags(format!("--kvec {s}: not a list of integers")))).collect()
}

/// Fock energy the GW bracket passes through.
fn required_energy(mu: &Partition, ks: &[i32]) -> u32 {
    mu.size().max(ks.iter().map(|&k| k.max(0) as u32).sum())
}

fn check_energy(cap: Option<u32>, mu: &Partition, ks: &[i32]) -> Result<(), Failure> {
    let need = required_energy(mu, ks);
    match cap {
        Some(e) if e < need => Err(Failure::truncation(format!("energy cap {e} is below {need} required for mu={mu} kvec={ks:?}"))),
        _ => Ok(()),
    }
}

fn expand(op: ExpandOp, k: Option<i32>, smax: i32, xorder: i32) -> Result<Outcome, Failure> {
    let need_k = || k.ok_or_else(|| Failure::flags("--k is required for this operator"));
    let (doc, text) = match op {
        ExpandOp::Hgw => {
            let k = need_k()?;
            let h = hgw_hat(k).map_err(Failure::internal)?;
            (json!({"op": "hgw", "k": k, "terms": h.to_json()}), format!("H^GW_{k} = {h}"))
        }
        ExpandOp::Hpt => {
            let k = need_k()?;
            let w = hpt_weights(k, PtSign::Generating).map_err(Failure::internal)?;
            let rows: Vec<Value> = w.iter().map(|(j, c)| json!({"ch": j, "coeff": c.to_json()})).collect();
            let text = w.iter().map(|(j, c)| format!("({c}) ch_{j}")).collect::<Vec<_>>().join(" + ");
            (json!({"op": "hpt", "k": k, "terms": rows}), format!("H^PT_{k} = {text}"))
        }
        ExpandOp::W => {
            let w = solve_w(smax).map_err(Failure::internal)?;
            let text = w.iter().map(|(a, b, c)| format!("H^{a} S^{b}: {c}")).collect::<Vec<_>>().join("\n");
            (json!({"op": "w", "smax": smax, "terms": w.to_json()}), text)
        }
        ExpandOp::Curve => {
            let c = lambert_w(xorder, 10).map_err(Failure::internal)?;
            let mut rows = Vec::new();
            let mut text = Vec::new();
            for j in 1..=xorder {
                let w = c.w_coefficient(j).map_err(Failure::internal)?;
                text.push(format!("[x^{j}] w = {w}"));
                rows.push(json!({"x": j, "coeff": w.to_json()}));
            }
            (json!({"op": "curve", "xorder": xorder, "terms": rows}), text.join("\n"))
        }
    };
    Ok(Outcome { doc, text, code: 0 })
}

fn one_leg_row(r: &OneLegReport) -> (Value, String) {
    let status = if r.pass { "pass" } else { "FAIL" };
    (r.to_json(), format!("one-leg mu={} kvec={:?} u^{}: {status}", r.mu, r.kvec, r.u_order))
}

fn commutator_check(energy: u32) -> Result<Vec<(Value, String, bool)>, Failure> {
    let cap = energy + 4;
    let states: Vec<_> = partitions_up_to(energy).into_iter().map(|l| FockVector::basis(l, cap)).collect();
    let mut out = Vec::new();
    for k in -3i64..=3 {
        for l in k..=3 {
            let expect = if k + l == 1 {
                TruncSeries::term(Scalar::int(if k % 2 == 0 { -1 } else { 1 }), &[(Var::T, 1), (Var::U, -2)])
            } else {
                TruncSeries::zero()
            };
            let mut worst = TruncSeries::zero();
            for v in &states {
                let kl = a_tilde_apply(k, &a_tilde_apply(l, v).map_err(Failure::internal)?).map_err(Failure::internal)?;
                let lk = a_tilde_apply(l, &a_tilde_apply(k, v).map_err(Failure::internal)?).map_err(Failure::internal)?;
                let d = kl.sub(&lk).sub(&v.scale(&expect));
                let bad = d.iter().find(|(p, c)| p.size() <= energy && !c.is_zero()).map(|(_, c)| c.clone());
                if let Some(c) = bad {
                    worst = c;
                    break;
                }
            }
            let pass = worst.is_zero();
            out.push((
                json!({"k": k, "l": l, "expected": expect.to_json(), "residual": worst.to_json(), "pass": pass}),
                format!("commutator [A~{k}, A~{l}]: {}", if pass { "pass" } else { "FAIL" }),
                pass,
            ));
        }
    }
    Ok(out)
}

fn dressing_checks(smax: i32) -> Result<Vec<(Value, String, bool)>, Failure> {
    let mut out = Vec::new();
    for (which, name) in [(Intertwine::D, "D"), (Intertwine::A { m: 1 }, "A(z=1)"), (Intertwine::A { m: 2 }, "A(z=2)"), (Intertwine::ClosedForm, "closed-form")] {
        let r = check_intertwine(which, smax).map_err(Failure::internal)?;
        if r.precision < 0 {
            return Err(Failure::truncation(format!("--smax {smax} leaves no valid u-order for the {name} check")));
        }
        let pass = r.vanishes();
        out.push((
            json!({"check": name, "precision": r.precision, "residual": r.value.to_json(), "pass": pass}),
            format!("dressing {name} through u^{}: {}", r.precision, if pass { "pass" } else { "FAIL" }),
            pass,
        ));
    }
    Ok(out)
}

fn verify(suite: Suite, form: PtForm, mu: Option<String>, kvec: Option<String>, uorder: i32, smax: i32, energy: Option<u32>) -> Result<Outcome, Failure> {
    let mut rows: Vec<(Value, String, bool)> = Vec::new();
    let one_leg = matches!(suite, Suite::OneLeg | Suite::All);
    if !one_leg && (mu.is_some() || kvec.is_some()) {
        return Err(Failure::flags("--mu and --kvec apply to the one-leg suite"));
    }
    if one_leg {
        let cases = match (&mu, &kvec) {
            (None, None) => one_leg_grid(),
            _ => vec![(parse_mu(mu.as_deref().unwrap_or("0"))?, parse_kvec(kvec.as_deref().unwrap_or(""))?)],
        };
        for (mu, ks) in &cases {
            check_energy(energy, mu, ks)?;
        }
        let mut ev = GwEvaluator::new();
        for (mu, ks) in &cases {
            let r = match form {
                PtForm::Generating => verify_one_leg(&mut ev, mu, ks, uorder),
                PtForm::Limit => verify_with(&mut ev, mu, ks, uorder, PtSign::Limit),
            }
            .map_err(Failure::internal)?;
            let (doc, text) = one_leg_row(&r);
            rows.push((doc, text, r.pass));
        }
    }
    if matches!(suite, Suite::Dressing | Suite::All) {
        rows.extend(dressing_checks(smax)?);
    }
    if matches!(suite, Suite::Commutators | Suite::All) {
        rows.extend(commutator_check(energy.unwrap_or(5))?);
    }
    let pass = rows.iter().all(|r| r.2);
    let first_failure = rows.iter().find(|r| !r.2).map(|r| r.0.clone()).unwrap_or(Value::Null);
    let suite_id = suite.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default();
    let text = rows.iter().map(|r| r.1.as_str()).collect::<Vec<_>>().join("\n");
    let doc = json!({
        "suite": suite_id,
        "pass": pass,
        "checks": rows.into_iter().map(|r| r.0).collect::<Vec<_>>(),
        "first_failure": first_failure,
    });
    Ok(Outcome { doc, text, code: if pass { 0 } else { 1 } })
}

fn table(op: TableOp, mus: &[String], kvecs: &[String], energy: Option<u32>) -> Result<(Vec<BracketResult>, Outcome), Failure> {
    let mus: Vec<Partition> = mus.iter().map(|m| parse_mu(m)).collect::<Result<_, _>>()?;
    let kvecs: Vec<Vec<i32>> = kvecs.iter().map(|k| parse_kvec(k)).collect::<Result<_, _>>()?;
    let mut ev = GwEvaluator::new();
    let mut results = Vec::new();
    for mu in &mus {
        for ks in &kvecs {
            check_energy(energy, mu, ks)?;
            let r = match op {
                TableOp::GwHgw => ev.gw_hgw_bracket(ks, mu),
                TableOp::GwTau => ev.gw_tau_bracket(ks, mu),
                TableOp::Pt => pt_bracket(ks, mu),
                TableOp::PtLimit => pt_bracket_limit(ks, mu),
            }
            .map_err(Failure::internal)?;
            results.push(r);
        }
    }
    let rows: Vec<Value> = results
        .iter()
        .map(|r| json!({"mu": r.mu.to_json(), "kvec": r.kvec, "pipeline": r.pipeline.id(), "series": r.value.to_string()}))
        .collect();
    let text = results.iter().map(|r| format!("{} {:?} {}: {}", r.mu, r.kvec, r.pipeline.id(), r.value)).collect::<Vec<_>>().join("\n");
    Ok((results, Outcome { doc: json!({"rows": rows}), text, code: 0 }))
}

fn csv_table(results: &[BracketResult]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["mu", "kvec", "pipeline", "series"]).map_err(Failure::internal)?;
    for r in results {
        let mu = r.mu.parts().iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let ks = r.kvec.iter().map(i32::to_string).collect::<Vec<_>>().join(",");
        w.write_record([mu, ks, r.pipeline.id().to_owned(), r.value.to_string()]).map_err(Failure::internal)?;
    }
    String::from_utf8(w.into_inner().map_err(Failure::internal)?).map_err(Failure::internal)
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let (command, outcome, csv) = match &cli.command {
        Command::Expand { op, k, smax, xorder } => ("expand", expand(*op, *k, *smax, *xorder)?, None),
        Command::Verify { suite, op, mu, kvec, uorder, smax, energy } => ("verify", verify(*suite, *op, mu.clone(), kvec.clone(), *uorder, *smax, *energy)?, None),
        Command::Table { op, mu, kvec, energy } => {
            let (results, outcome) = table(*op, mu, kvec, *energy)?;
            ("table", outcome, Some(results))
        }
    };
    let body = match cli.format {
        Format::Json => {
            let mut doc = json!({"schema": SCHEMA, "command": command});
            if let (Value::Object(m), Value::Object(extra)) = (&mut doc, outcome.doc) {
                m.extend(extra);
            }
            serde_json::to_string_pretty(&doc).map_err(Failure::internal)? + "\n"
        }
        Format::Csv => match csv {
            Some(results) => csv_table(&results)?,
            None => return Err(Failure::flags("--format csv is only available for table")),
        },
        Format::Text => outcome.text + "\n",
    };
    Ok((body, outcome.code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((body, code)) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &body),
                None => std::io::stdout().write_all(body.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("gwpt: cannot write output: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("gwpt: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
