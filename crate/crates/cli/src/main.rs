//! `symquiver`: command-line front end for the core crate.
//!
//! Exit status: 0 on success or a passing verification, 1 when a
//! verification fails, 2 on usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use symquiver_core::algebra::{dimension_table, gr_linking_check, homology_check, poincare_check, Algebra};
use symquiver_core::diagonal::{diagonalize, verify_diagonalization};
use symquiver_core::dt::{dt_extract, DtResult};
use symquiver_core::identities::{calibrate, verify_link_identity, verify_unlink_identity, Transform};
use symquiver_core::motivic::motivic_series;
use symquiver_core::{default_window_for, Conventions, Quiver, VerificationReport, Window};

#[derive(Parser, Debug)]
#[command(name = "symquiver", version, about = "Exact computations for symmetric quivers")]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Options {
    /// Truncation order: total degree, diagonalization rounds or degree bound.
    #[arg(long, global = true, default_value_t = 3)]
    order: u32,
    /// Lowest t-exponent (t = q^{1/2}) kept in every coefficient.
    #[arg(long, global = true, allow_negative_numbers = true)]
    qmin: Option<i64>,
    /// Highest t-exponent kept in every coefficient.
    #[arg(long, global = true, allow_negative_numbers = true)]
    qmax: Option<i64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    output: Format,
    /// JSON file overriding the substitution and normalization conventions.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the resulting quiver to this file.
    #[arg(short = 'o', long = "out", global = true)]
    out: Option<PathBuf>,
    /// Largest Σk examined by algebra computations.
    #[arg(long, global = true, default_value_t = 8)]
    smax: u32,
    /// Scan the substitution constant instead of checking the configured one.
    #[arg(long, global = true)]
    calibrate: bool,
    /// Include wall-clock time in reports.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertices, matrix and basic data of a quiver.
    Info { quiver: PathBuf },
    /// Motivic generating series to the given order.
    Series { quiver: PathBuf },
    /// DT invariants in u = -q^{1/2}.
    Dt { quiver: PathBuf },
    /// Link vertices a and b.
    Link { quiver: PathBuf, a: String, b: String },
    /// Unlink vertices a and b.
    Unlink { quiver: PathBuf, a: String, b: String },
    /// Iterated unlinking to a diagonal quiver.
    Diagonalize { quiver: PathBuf },
    /// Algebra dimensions by rank and by the functional formula.
    AlgebraDims { quiver: PathBuf },
    /// Check an identity and report mismatches.
    Verify {
        #[arg(value_enum)]
        target: Target,
        quiver: PathBuf,
        a: Option<String>,
        b: Option<String>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Linking,
    Unlinking,
    Diagonalization,
    Poincare,
    Gr,
    Homology,
}

/// What the command produced and how it should end.
struct Output {
    value: Value,
    text: String,
    failed: bool,
}

impl Output {
    fn ok(value: Value, text: String) -> Self {
        Output { value, text, failed: false }
    }
}

fn load(path: &Path) -> anyhow::Result<Quiver> {
    let parsed = Quiver::load(path).with_context(|| format!("cannot read {}", path.display()))?;
    parsed.with_context(|| format!("invalid quiver in {}", path.display()))
}

fn conventions(opts: &Options) -> anyhow::Result<Conventions> {
    let Some(path) = &opts.config else {
        return Ok(Conventions::default());
    };
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("invalid conventions in {}", path.display()))
}

fn window(opts: &Options, quivers: &[&Quiver]) -> anyhow::Result<Window> {
    let def = default_window_for(quivers, opts.order);
    let w = Window::new(opts.qmin.unwrap_or(def.lo), opts.qmax.unwrap_or(def.hi))?;
    Ok(w)
}

fn write_quiver(opts: &Options, q: &Quiver) -> anyhow::Result<()> {
    if let Some(path) = &opts.out {
        q.save(path).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn vertex_args(target: Target, a: &Option<String>, b: &Option<String>) -> anyhow::Result<(String, String)> {
    match (a, b) {
        (Some(a), Some(b)) => Ok((a.clone(), b.clone())),
        _ => bail!("verify {target:?} needs two vertex labels"),
    }
}

fn report_text(r: &VerificationReport) -> String {
    let mut out = format!("{} {}\n", if r.pass { "PASS" } else { "FAIL" }, r.name);
    for (k, v) in &r.parameters {
        out.push_str(&format!("  {k} = {v}\n"));
    }
    for (k, v) in &r.details {
        out.push_str(&format!("  {k}: {v}\n"));
    }
    for m in &r.mismatches {
        out.push_str(&format!("  mismatch at {}: {} vs {}\n", json!(m.at), m.lhs, m.rhs));
    }
    out
}

fn dt_text(om: &DtResult) -> String {
    let mut out = String::new();
    for e in &om.entries {
        let terms: Vec<String> = e
            .omega
            .iter()
            .map(|(k, c)| {
                let c = symquiver_core::laurent::format_rational(c);
                match (c.as_str(), k) {
                    (_, 0) => c,
                    ("1", 1) => "u".to_string(),
                    ("1", _) => format!("u^{k}"),
                    (_, 1) => format!("{c}*u"),
                    _ => format!("{c}*u^{k}"),
                }
            })
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        let flag = if e.stable { "" } else { "  (not stabilized)" };
        out.push_str(&format!("Omega{}: {body}{flag}\n", e.degree));
    }
    out
}

fn verify(
    opts: &Options,
    conv: &Conventions,
    target: Target,
    q: &Quiver,
    a: &Option<String>,
    b: &Option<String>,
) -> anyhow::Result<VerificationReport> {
    let n = opts.order;
    let report = match target {
        Target::Linking | Target::Unlinking => {
            let (a, b) = vertex_args(target, a, b)?;
            let transform = if target == Target::Linking { Transform::Link } else { Transform::Unlink };
            let other = transform.apply(q, &a, &b)?;
            let w = window(opts, &[q, &other])?;
            if opts.calibrate {
                calibrate(transform, q, &a, &b, n, w, conv)?
            } else if transform == Transform::Link {
                verify_link_identity(q, &a, &b, n, w, conv)?
            } else {
                verify_unlink_identity(q, &a, &b, n, w, conv)?
            }
        }
        Target::Diagonalization => {
            let diag = diagonalize(q, n, conv)?;
            verify_diagonalization(q, n, window(opts, &[q, &diag.quiver])?, conv)?
        }
        Target::Poincare => poincare_check(q, n, window(opts, &[q])?, conv)?,
        Target::Gr => {
            let (a, b) = vertex_args(target, a, b)?;
            gr_linking_check(q, &a, &b, n, opts.smax, true, conv)?
        }
        Target::Homology => {
            let (a, b) = vertex_args(target, a, b)?;
            homology_check(q, &a, &b, n, opts.smax, conv)?
        }
    };
    Ok(report)
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let opts = &cli.opts;
    let conv = conventions(opts)?;
    let out = match &cli.command {
        Command::Info { quiver } => {
            let q = load(quiver)?;
            let value = json!({
                "vertices": q.vertices(),
                "matrix": q.matrix(),
                "loops": (0..q.len()).map(|i| q.loops(i)).collect::<Vec<_>>(),
                "diagonal": q.is_diagonal(),
                "default_window": window(opts, &[&q])?,
                "conventions": conv,
            });
            Output::ok(value, q.to_string())
        }
        Command::Series { quiver } => {
            let q = load(quiver)?;
            let w = window(opts, &[&q])?;
            let s = motivic_series(&q, opts.order, w)?;
            let coeffs: Vec<Value> = s.terms().map(|(d, c)| json!({"degree": d, "coefficient": c})).collect();
            Output::ok(json!({"order": opts.order, "window": w, "coefficients": coeffs}), format!("{s}\n"))
        }
        Command::Dt { quiver } => {
            let q = load(quiver)?;
            let mut w = window(opts, &[&q])?;
            let mut om = dt_extract(&motivic_series(&q, opts.order, w)?)?;
            let mut widened = false;
            if !om.all_stable() && opts.qmax.is_none() {
                w = Window::new(w.lo, 2 * w.hi + 8)?;
                om = dt_extract(&motivic_series(&q, opts.order, w)?)?;
                widened = true;
            }
            let value = json!({
                "order": opts.order,
                "window": w,
                "widened": widened,
                "normalization": conv.dt_normalization,
                "invariants": om.to_json(),
            });
            Output::ok(value, dt_text(&om))
        }
        Command::Link { quiver, a, b } | Command::Unlink { quiver, a, b } => {
            let q = load(quiver)?;
            let t = if matches!(cli.command, Command::Link { .. }) { Transform::Link } else { Transform::Unlink };
            let r = t.apply(&q, a, b)?;
            write_quiver(opts, &r)?;
            Output::ok(serde_json::to_value(&r)?, r.to_string())
        }
        Command::Diagonalize { quiver } => {
            let q = load(quiver)?;
            let r = diagonalize(&q, opts.order, &conv)?;
            write_quiver(opts, &r.quiver)?;
            let text =
                r.factors.iter().map(|f| format!("{}: {} loops, x_new = {}\n", f.label, f.loops, f.monomial)).collect();
            Output::ok(serde_json::to_value(&r)?, text)
        }
        Command::AlgebraDims { quiver } => {
            let q = load(quiver)?;
            let rows = dimension_table(&Algebra::new(&q), opts.order, opts.smax);
            let failed = rows.iter().any(|r| r.dim_rank != r.dim_functional);
            let text = rows
                .iter()
                .map(|r| format!("d={:?} h={}: {} (functional {})\n", r.d, r.h, r.dim_rank, r.dim_functional))
                .collect();
            Output { value: serde_json::to_value(&rows)?, text, failed }
        }
        Command::Verify { target, quiver, a, b } => {
            let q = load(quiver)?;
            let start = Instant::now();
            let mut report = verify(opts, &conv, *target, &q, a, b)?;
            if opts.timing {
                report.timing_ms = Some(start.elapsed().as_millis());
            }
            let failed = !report.pass;
            Output { text: report_text(&report), value: serde_json::to_value(&report)?, failed }
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.opts.output {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&out.value).expect("JSON values serialize"))
                }
                Format::Text => print!("{}", out.text),
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {:#}", anyhow!(e));
            ExitCode::from(2)
        }
    }
}
