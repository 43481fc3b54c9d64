//! Command-line front end.
//!
//! Every command produces one report envelope. In JSON it has the stable
//! shape
//!
//! ```text
//! { "query" | "check": name, "params": {...}, "result": ..., "passed": bool,
//!   "counterexamples": [...], "seed": int | null, "elapsed_ms": int | null }
//! ```
//!
//! `elapsed_ms` is only filled in with `--timing`, so that repeated
//! invocations print identical bytes. Exit codes: 0 success, 1 failed check
//! or arithmetic/invariant failure, 2 usage or configuration error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::formulas::{
    abcde, ci_dimension, f_value, generic_slice_rank, join_dim_upper_bound, JoinProfile,
};
use crate::oracle::{cross_check, terracini_join_dim, DimensionReport, DEFAULT_PRIME, DEFAULT_TRIALS};
use crate::verifier::{self, VerificationReport};

pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "strength",
    version,
    about = "Join-dimension bounds, the objective F, and exhaustive verification sweeps",
    after_help = "Exit codes: 0 = success, 1 = counterexample / bound violation / overflow, 2 = usage error.\n\
                  Worker threads can be limited with RAYON_NUM_THREADS."
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Fill in `elapsed_ms` (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generic slice rank of degree-d forms in n+1 variables.
    Slrk {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
    },
    /// Upper bound on dim J_{a_1..a_r}.
    Bound(ProfileArgs),
    /// The objective F(a_1..a_r).
    F(ProfileArgs),
    /// Dimension of the family of complete intersections of the given degrees.
    CiDim {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        degs: Vec<u32>,
    },
    /// A_{l1,l2} and its differences B..E.
    Abcde {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l1: u32,
        #[arg(long)]
        l2: u32,
    },
    /// Exhaustive verification sweeps.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Randomized join dimensions over F_p.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Debug, Args)]
struct ProfileArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    n: u32,
    /// Comma-separated factor degrees, e.g. 1,1,2 (order does not matter).
    #[arg(long, value_delimiter = ',', required = true)]
    degs: Vec<u32>,
}

#[derive(Debug, Args)]
struct RangeArgs {
    #[arg(long, default_value_t = *verifier::DEFAULT_D_RANGE.start())]
    d_min: u32,
    #[arg(long, default_value_t = *verifier::DEFAULT_D_RANGE.end())]
    d_max: u32,
    #[arg(long, default_value_t = *verifier::DEFAULT_N_RANGE.start())]
    n_min: u32,
    #[arg(long, default_value_t = *verifier::DEFAULT_N_RANGE.end())]
    n_max: u32,
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// F is uniquely minimized by the all-ones profile.
    Minimality(RangeArgs),
    /// The coeff_4 inequality used when the largest degree exceeds 2.
    Theta {
        #[arg(long, default_value_t = verifier::DEFAULT_M_MAX)]
        m_max: u32,
    },
    /// Sign conditions on the differences B..E.
    Edcba(RangeArgs),
    /// A_{l1,l2} > A_{l1+l2,0}.
    Chain(RangeArgs),
    /// Lowering the largest degree theta > 2 strictly decreases F.
    ThetaReduction(RangeArgs),
    /// Series coefficient equals the inclusion-exclusion sum.
    Identity {
        #[arg(long, default_value_t = verifier::DEFAULT_IDENTITY_BOX.0)]
        n_max: u32,
        #[arg(long, default_value_t = verifier::DEFAULT_IDENTITY_BOX.1)]
        e_max: u32,
        #[arg(long, default_value_t = verifier::DEFAULT_IDENTITY_BOX.2)]
        deg_max: u32,
        #[arg(long, default_value_t = verifier::DEFAULT_IDENTITY_BOX.3)]
        len_max: usize,
    },
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    p: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u32,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Measure one join dimension.
    JoinDim {
        #[command(flatten)]
        profile: ProfileArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Measure every profile with r <= max_r and compare with the formulas.
    CrossCheck {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        max_r: u32,
        #[command(flatten)]
        oracle: OracleArgs,
    },
}

/// The JSON report envelope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<String>,
    pub params: Value,
    pub result: Value,
    pub passed: bool,
    pub counterexamples: Vec<Value>,
    pub seed: Option<u64>,
    pub elapsed_ms: Option<u64>,
}

struct Rendered {
    envelope: Envelope,
    table: String,
    csv_header: Vec<String>,
    csv_rows: Vec<Vec<String>>,
}

fn query(name: &str, params: Value, result: Value, table: String) -> Rendered {
    let mut header = vec!["query".to_string()];
    let mut row = vec![name.to_string()];
    if let Value::Object(map) = &params {
        for (k, v) in map {
            header.push(k.clone());
            row.push(csv_cell(v));
        }
    }
    match &result {
        Value::Object(map) => {
            for (k, v) in map {
                header.push(k.clone());
                row.push(csv_cell(v));
            }
        }
        other => {
            header.push("result".into());
            row.push(csv_cell(other));
        }
    }
    Rendered {
        envelope: Envelope {
            query: Some(name.to_string()),
            check: None,
            params,
            result,
            passed: true,
            counterexamples: Vec::new(),
            seed: None,
            elapsed_ms: None,
        },
        table,
        csv_header: header,
        csv_rows: vec![row],
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(csv_cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn profile_from(args: &ProfileArgs) -> Result<JoinProfile> {
    JoinProfile::new(args.d, args.n, args.degs.clone())
}

fn profile_params(p: &JoinProfile) -> Value {
    json!({
        "d": p.d(),
        "n": p.n(),
        "degs": p.degs(),
        "within_main_hypothesis": p.within_main_hypothesis(),
    })
}

fn hypothesis_note(p: &JoinProfile) -> String {
    if p.within_main_hypothesis() {
        String::new()
    } else {
        format!("note: d = {} is below 5, outside the main minimality statement\n", p.d())
    }
}

fn verification(report: VerificationReport) -> Rendered {
    let mut table = format!(
        "check: {}\nparams: {}\ninstances: {}\ncounterexamples: {}\npassed: {}\n",
        report.check,
        serde_json::to_string(&report.params).expect("params serialize"),
        report.instances,
        report.counterexample_count,
        report.passed
    );
    for note in &report.notes {
        table.push_str(&format!("note: {note}\n"));
    }
    for ce in &report.counterexamples {
        table.push_str(&format!("  fails at {}: lhs = {}, rhs = {}\n", ce.params, ce.lhs, ce.rhs));
    }
    let csv_header = ["check", "params", "instances", "counterexamples", "passed"]
        .map(String::from)
        .to_vec();
    let csv_rows = vec![vec![
        report.check.clone(),
        serde_json::to_string(&report.params).expect("params serialize"),
        report.instances.to_string(),
        report.counterexample_count.to_string(),
        report.passed.to_string(),
    ]];
    let counterexamples = report
        .counterexamples
        .iter()
        .map(|c| serde_json::to_value(c).expect("counterexample serializes"))
        .collect();
    Rendered {
        envelope: Envelope {
            query: None,
            check: Some(report.check.clone()),
            params: serde_json::to_value(&report.params).expect("params serialize"),
            result: json!({
                "instances": report.instances,
                "counterexample_count": report.counterexample_count,
                "notes": report.notes,
            }),
            passed: report.passed,
            counterexamples,
            seed: None,
            elapsed_ms: None,
        },
        table,
        csv_header,
        csv_rows,
    }
}

const ORACLE_HEADER: [&str; 8] = ["d", "n", "degs", "formula_bound", "hl_value", "oracle_value", "equality", "seed"];

fn oracle_row(r: &DimensionReport) -> Vec<String> {
    let degs: Vec<String> = r.profile.degs().iter().map(u32::to_string).collect();
    vec![
        r.profile.d().to_string(),
        r.profile.n().to_string(),
        degs.join(" "),
        r.formula_bound.to_string(),
        r.hl_value.map(|v| v.to_string()).unwrap_or_default(),
        r.oracle_value.to_string(),
        r.equality.to_string(),
        r.seed.to_string(),
    ]
}

fn oracle_table(reports: &[DimensionReport]) -> String {
    let rows: Vec<Vec<String>> = reports.iter().map(oracle_row).collect();
    let mut widths: Vec<usize> = ORACLE_HEADER.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let fmt_row = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            + "\n"
    };
    let mut out = fmt_row(ORACLE_HEADER.to_vec());
    for row in &rows {
        out.push_str(&fmt_row(row.iter().map(String::as_str).collect()));
    }
    out
}

fn dispatch(command: &Command) -> Result<Rendered> {
    Ok(match command {
        Command::Slrk { d, n } => {
            let v = generic_slice_rank(*d, *n)?;
            query("slrk", json!({ "d": d, "n": n }), json!(v), format!("{v}\n"))
        }
        Command::Bound(args) => {
            let p = profile_from(args)?;
            let v = join_dim_upper_bound(&p)?;
            query("bound", profile_params(&p), json!(v), format!("{}{v}\n", hypothesis_note(&p)))
        }
        Command::F(args) => {
            let p = profile_from(args)?;
            let v = f_value(&p)?;
            query("f", profile_params(&p), json!(v), format!("{}{v}\n", hypothesis_note(&p)))
        }
        Command::CiDim { n, degs } => {
            let mut sorted = degs.clone();
            sorted.sort_unstable();
            let v = ci_dimension(*n, &sorted)?;
            query("ci-dim", json!({ "n": n, "degs": sorted }), json!(v), format!("{v}\n"))
        }
        Command::Abcde { d, n, l1, l2 } => {
            let rec = abcde(*d, *n, *l1, *l2)?;
            let mut table = String::new();
            for (k, name) in ["A", "B", "C", "D", "E"].iter().enumerate() {
                let v = rec.order(k).map(|v| v.to_string()).unwrap_or_else(|| "-".into());
                table.push_str(&format!("{name} = {v}\n"));
            }
            query(
                "abcde",
                json!({ "d": d, "n": n, "l1": l1, "l2": l2 }),
                serde_json::to_value(rec).expect("record serializes"),
                table,
            )
        }
        Command::Verify { check } => verification(run_verification(check)?),
        Command::Oracle { command } => run_oracle(command)?,
    })
}

fn run_verification(check: &VerifyCommand) -> Result<VerificationReport> {
    let rect = |r: &RangeArgs| (r.d_min..=r.d_max, r.n_min..=r.n_max);
    match check {
        VerifyCommand::Minimality(r) => {
            let (ds, ns) = rect(r);
            verifier::sweep("minimality", ds, ns, verifier::verify_minimality)
        }
        VerifyCommand::Theta { m_max } => verifier::verify_theta_inequality(*m_max),
        VerifyCommand::Edcba(r) => {
            let (ds, ns) = rect(r);
            verifier::sweep("edcba", ds, ns, verifier::verify_edcba)
        }
        VerifyCommand::Chain(r) => {
            let (ds, ns) = rect(r);
            verifier::sweep("chain", ds, ns, verifier::verify_chain)
        }
        VerifyCommand::ThetaReduction(r) => {
            let (ds, ns) = rect(r);
            verifier::sweep("theta-reduction", ds, ns, verifier::verify_theta_reduction)
        }
        VerifyCommand::Identity {
            n_max,
            e_max,
            deg_max,
            len_max,
        } => verifier::verify_identity_lemma(*n_max, *e_max, *deg_max, *len_max),
    }
}

fn run_oracle(command: &OracleCommand) -> Result<Rendered> {
    match command {
        OracleCommand::JoinDim { profile, oracle } => {
            let p = profile_from(profile)?;
            let report = match terracini_join_dim(&p, oracle.p, oracle.trials, oracle.seed) {
                Ok(r) => r,
                Err(e @ Error::BoundViolation { .. }) => {
                    return Ok(oracle_failure("join-dim", profile_params(&p), oracle, e));
                }
                Err(e) => return Err(e),
            };
            let mut params = profile_params(&p);
            params["p"] = json!(oracle.p);
            params["trials"] = json!(oracle.trials);
            Ok(Rendered {
                table: format!("{}{}", hypothesis_note(&p), oracle_table(std::slice::from_ref(&report))),
                csv_header: ORACLE_HEADER.map(String::from).to_vec(),
                csv_rows: vec![oracle_row(&report)],
                envelope: Envelope {
                    query: Some("oracle join-dim".into()),
                    check: None,
                    params,
                    result: serde_json::to_value(&report).expect("report serializes"),
                    passed: true,
                    counterexamples: Vec::new(),
                    seed: Some(oracle.seed),
                    elapsed_ms: None,
                },
            })
        }
        OracleCommand::CrossCheck { d, n, max_r, oracle } => {
            let rep = cross_check(*d, *n, *max_r, oracle.p, oracle.trials, oracle.seed)?;
            let mut table = oracle_table(&rep.reports);
            for f in &rep.failures {
                table.push_str(&format!("FAILED: {f}\n"));
            }
            table.push_str(&format!("passed: {}\n", rep.passed));
            Ok(Rendered {
                table,
                csv_header: ORACLE_HEADER.map(String::from).to_vec(),
                csv_rows: rep.reports.iter().map(oracle_row).collect(),
                envelope: Envelope {
                    query: None,
                    check: Some("oracle cross-check".into()),
                    params: json!({
                        "d": d, "n": n, "max_r": max_r, "p": oracle.p, "trials": oracle.trials,
                    }),
                    result: json!({ "reports": rep.reports }),
                    passed: rep.passed,
                    counterexamples: rep.failures.iter().map(|f| json!(f)).collect(),
                    seed: Some(oracle.seed),
                    elapsed_ms: None,
                },
            })
        }
    }
}

fn oracle_failure(name: &str, params: Value, oracle: &OracleArgs, err: Error) -> Rendered {
    let msg = err.to_string();
    Rendered {
        table: format!("FAILED: {msg}\n"),
        csv_header: vec!["failure".into()],
        csv_rows: vec![vec![msg.clone()]],
        envelope: Envelope {
            query: Some(format!("oracle {name}")),
            check: None,
            params,
            result: Value::Null,
            passed: false,
            counterexamples: vec![json!(msg)],
            seed: Some(oracle.seed),
            elapsed_ms: None,
        },
    }
}

fn render(rendered: &Rendered, format: Format) -> std::result::Result<String, String> {
    match format {
        Format::Table => Ok(rendered.table.clone()),
        Format::Json => serde_json::to_string_pretty(&rendered.envelope)
            .map(|s| s + "\n")
            .map_err(|e| e.to_string()),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&rendered.csv_header).map_err(|e| e.to_string())?;
            for row in &rendered.csv_rows {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            String::from_utf8(bytes).map_err(|e| e.to_string())
        }
    }
}

/// Parses `args` (including the program name), runs the command, writes
/// the report to `out` (or `--output`) and diagnostics to `err`. Returns
/// the process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let start = Instant::now();
    let mut rendered = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return if e.is_usage() { 2 } else { 1 };
        }
    };
    if cli.timing {
        rendered.envelope.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    let text = match render(&rendered, cli.format) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: failed to render report: {e}");
            return 1;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return 2;
    }
    if rendered.envelope.passed {
        0
    } else {
        1
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
