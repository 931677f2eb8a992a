//! Command-line front end: each subcommand evaluates one family of results
//! and writes it as CSV (default), JSON, or for `matrix` a raw binary dump.
//!
//! Exit codes: 0 success, 1 invalid input, 2 numerical or verification
//! failure, 3 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qredux::export::Table;
use qredux::redundancy::{self as red, identity_check, Identity, IdentityParams, Mode, Regime};
use qredux::{bayes_matrix, compress, optimize, spectrum, Error};
use serde_json::json;

mod output;
mod verify;

pub use output::{Format, Report};
use output::{real, table_json};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Environment variable capping the worker-thread count.
pub const THREADS_VAR: &str = "QREDUX_THREADS";

#[derive(Debug, Parser)]
#[command(name = "qredux", version, about = "Redundancy of universal quantum coding for qubits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output format; `bin` is accepted by `matrix` only.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues and multiplicities of ζ_n(u).
    Spectrum {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        u: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dense ζ_n(u) as `I,J,value` rows or a binary dump.
    Matrix {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        u: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact relative entropy against its large-n form.
    Redundancy {
        #[arg(long, value_delimiter = ',', default_value = "16,32,64,128")]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0.5", allow_hyphen_values = true)]
        u: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0,0.5,1")]
        r: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Large-n redundancy with the classical baselines alongside.
    Asymptotic {
        #[arg(long, value_delimiter = ',', default_value = "16,64,256,1024")]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0.5", allow_hyphen_values = true)]
        u: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0,0.5,1")]
        r: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Von Neumann entropy of ζ_n(u), exact and asymptotic.
    Entropy {
        #[arg(long, value_delimiter = ',', default_value = "16,32,64,128,256,512,1024")]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0,0.5", allow_hyphen_values = true)]
        u: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Bayes redundancy under q(u), exact and asymptotic.
    Bayes {
        #[arg(long, value_delimiter = ',', default_value = "4,16,64,256")]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0.5", allow_hyphen_values = true)]
        u: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The u_n equalizing the center and pure-state redundancies.
    Minimax {
        #[arg(long, value_delimiter = ',', default_value = "4,8,16,32,64,128,256,512")]
        n: Vec<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Stationary point of the Bayes constant C(u); JSON by default.
    Maximin {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Relative entropy over the Bloch radius and its maximizer.
    Rscan {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 0.4, allow_negative_numbers = true)]
        u: f64,
        #[arg(long, default_value_t = 128)]
        grid: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dominant-eigenspace compression plan; with --grid, the retained
    /// source weight curve of that plan instead.
    Compress {
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        u: f64,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long)]
        grid: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Residuals of the closed-form summation identities.
    Identities {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        r: f64,
        #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
        u: f64,
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        alpha: f64,
        /// Level for e37; defaults to min(1, n/2).
        #[arg(long)]
        d: Option<usize>,
        /// Free variable for e37; defaults to r/2.
        #[arg(long, allow_negative_numbers = true)]
        z: Option<f64>,
        #[arg(long, default_value_t = 1e-11)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Oracle and invariant suite; with --input, checks a binary matrix file.
    Verify {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Tolerance for dense-spectrum and file checks.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Nonclassical term (1/2r) log((1−r)/(1+r)) on r = i/grid.
    Figure2 {
        #[arg(long, default_value_t = 100)]
        grid: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Bayes constant C(u) on a uniform grid.
    Figure3 {
        #[arg(long, default_value_t = 100)]
        grid: usize,
        #[arg(long, default_value_t = -0.2, allow_negative_numbers = true)]
        lo: f64,
        #[arg(long, default_value_t = 0.99, allow_negative_numbers = true)]
        hi: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

enum Failure {
    Core(Error),
    Usage(String),
    /// Ran to completion, but a check did not pass.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_)
        | Error::Contract(_)
        | Error::Capacity(_)
        | Error::InfiniteDivergence
        | Error::Format(_)
        | Error::Io(_) => EXIT_DOMAIN,
        Error::Accuracy { .. } | Error::Search { .. } | Error::Internal(_) => EXIT_NUMERICAL,
    }
}

/// Parses `args` (program name first), runs the subcommand and writes its
/// output to `out` unless `--out` is given. Diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    if let Err(msg) = configure_threads() {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_USAGE;
    }
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "{msg}");
            EXIT_NUMERICAL
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let k: usize = raw.trim().parse().map_err(|_| format!("{THREADS_VAR}={raw:?} is not a thread count"))?;
    if k == 0 {
        return Err(format!("{THREADS_VAR} must be positive"));
    }
    // a pool already built by an earlier call in this process stays in place
    let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    let Dispatched { report, output, default, verdict } = dispatch(command)?;
    let format = output.format.unwrap_or(default);
    let bytes = match (report, format) {
        (Report::Bytes(b), Format::Bin) => b,
        (Report::Bytes(_), _) => unreachable!("binary reports are only produced for --format bin"),
        (_, Format::Bin) => return Err(Failure::Usage("--format bin is only available for `matrix`".into())),
        (Report::Table(t), Format::Csv) | (Report::Document { table: t, .. }, Format::Csv) => t.to_csv().into_bytes(),
        (Report::Table(t), Format::Json) => json_bytes(&table_json(&t)),
        (Report::Document { json, .. }, Format::Json) => json_bytes(&json),
    };
    match &output.out {
        Some(path) => std::fs::write(path, &bytes).map_err(Error::from)?,
        None => out.write_all(&bytes).map_err(Error::from)?,
    }
    // failing checks still print their table; the exit code carries the verdict
    verdict.map_or(Ok(()), |msg| Err(Failure::Check(msg)))
}

fn json_bytes(v: &serde_json::Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s.into_bytes()
}

struct Dispatched {
    report: Report,
    output: OutputArgs,
    /// Format used when `--format` is absent.
    default: Format,
    /// Set when a check ran but failed.
    verdict: Option<String>,
}

impl Dispatched {
    fn csv(report: Report, output: OutputArgs) -> Self {
        Self { report, output, default: Format::Csv, verdict: None }
    }
}

fn dispatch(command: Command) -> Result<Dispatched, Failure> {
    use Command::*;
    let table = |t: Table, output| Dispatched::csv(Report::Table(t), output);
    Ok(match command {
        Spectrum { n, u, output } => table(spectrum::spectrum(n, u)?.to_table(), output),
        Matrix { n, u, output } => {
            let z = bayes_matrix::zeta_matrix(n, u)?;
            if output.format == Some(Format::Bin) {
                let mut buf = Vec::new();
                z.write_binary(&mut buf)?;
                Dispatched::csv(Report::Bytes(buf), output)
            } else {
                table(z.to_table(), output)
            }
        }
        Redundancy { n, u, r, output } => table(red::redundancy_table(&n, &u, &r)?, output),
        Asymptotic { n, u, r, output } => table(asymptotic_table(&n, &u, &r)?, output),
        Entropy { n, u, output } => table(entropy_table(&n, &u)?, output),
        Bayes { n, u, output } => table(bayes_table(&n, &u)?, output),
        Minimax { n, output } => table(optimize::minimax_table(&n)?, output),
        Maximin { output } => {
            let m = optimize::maximin_u()?;
            let mut t = Table::new(&["u_star", "constant", "residual"]);
            t.push(vec![m.u_star.into(), m.constant.into(), m.equation_residual.into()]);
            let json = json!({
                "u_star": real(m.u_star),
                "constant": real(m.constant),
                "residual": real(m.equation_residual),
            });
            Dispatched { default: Format::Json, ..Dispatched::csv(Report::Document { table: t, json }, output) }
        }
        Rscan { n, u, grid, output } => {
            let s = optimize::rmax_scan(n, u, grid)?;
            let table = s.to_table();
            let json = json!({
                "n": n,
                "u": real(u),
                "argmax_r": real(s.argmax_r),
                "max_value": real(s.max_value),
                "profile": table_json(&table),
            });
            Dispatched::csv(Report::Document { table, json }, output)
        }
        Compress { n, u, eps, grid, output } => {
            let p = compress::plan(n, u, eps)?;
            match grid {
                Some(g) => table(compress::source_curve(n, p.d_max, g)?, output),
                None => {
                    let table = compress::plan_table(std::slice::from_ref(&p));
                    let mut json = table_json(&table)[0].clone();
                    let sources: Vec<_> = p
                        .source_weights
                        .iter()
                        .map(|&(r, w)| json!({ "r": real(r), "retained_weight": real(w) }))
                        .collect();
                    json["source_weights"] = sources.into();
                    Dispatched::csv(Report::Document { table, json }, output)
                }
            }
        }
        Identities { n, r, u, alpha, d, z, tol, output } => {
            let params = IdentityParams { n, r, u, alpha, d: d.unwrap_or(1.min(n / 2)), z: z.unwrap_or(0.5 * r) };
            let (t, failed) = identities_table(&params, tol)?;
            let verdict = (failed > 0).then(|| format!("{failed} identities exceed tolerance {tol:e}"));
            Dispatched { verdict, ..table(t, output) }
        }
        Verify { input, tol, output } => {
            let checks = match &input {
                Some(path) => verify::verify_file(path, tol)?,
                None => verify::suite(tol)?,
            };
            let failed = checks.iter().filter(|c| !c.passed()).count();
            let verdict = (failed > 0).then(|| format!("{failed} of {} checks failed", checks.len()));
            Dispatched { verdict, ..table(verify::to_table(&checks), output) }
        }
        Figure2 { grid, output } => table(red::figure2_table(grid)?, output),
        Figure3 { grid, lo, hi, output } => table(red::figure3_table(lo, hi, grid)?, output),
    })
}

fn asymptotic_table(ns: &[usize], us: &[f64], rs: &[f64]) -> qredux::Result<Table> {
    let mut t = Table::new(&["n", "u", "r", "regime", "asymptotic", "minimax3d", "redundancy3d", "boundary2d"]);
    for &n in ns {
        for &u in us {
            for &r in rs {
                let regime = Regime::for_radius(r)?;
                let value = red::asymptotic_redundancy(n, u, r, regime)?;
                // the three-parameter classical formula has no r = 1 value
                let boundary = regime == Regime::Boundary;
                let base = red::classical_baselines(n, u, if boundary { 0.0 } else { r })?;
                let r3 = if boundary { f64::NAN } else { base.redundancy3d };
                let name = match regime {
                    Regime::Interior => "interior",
                    Regime::Center => "center",
                    Regime::Boundary => "boundary",
                };
                t.push(vec![
                    n.into(),
                    u.into(),
                    r.into(),
                    name.into(),
                    value.into(),
                    base.minimax3d.into(),
                    r3.into(),
                    base.boundary2d.into(),
                ]);
            }
        }
    }
    Ok(t)
}

fn entropy_table(ns: &[usize], us: &[f64]) -> qredux::Result<Table> {
    let mut t = Table::new(&["n", "u", "exact", "asym", "scaled_error", "rate"]);
    for &n in ns {
        for &u in us {
            let exact = red::zeta_entropy_exact(n, u)?;
            let asym = red::zeta_entropy_asym(n, u)?;
            let scaled = (n as f64).powf(1.0 - u) * (exact - asym).abs();
            t.push(vec![n.into(), u.into(), exact.into(), asym.into(), scaled.into(), red::entropy_rate(u)?.into()]);
        }
    }
    Ok(t)
}

fn bayes_table(ns: &[usize], us: &[f64]) -> qredux::Result<Table> {
    let mut t = Table::new(&["n", "u", "exact", "asymptotic", "constant"]);
    for &n in ns {
        for &u in us {
            let exact = red::bayes_redundancy(n, u, Mode::Exact)?;
            let asym = red::bayes_redundancy(n, u, Mode::Asymptotic)?;
            t.push(vec![n.into(), u.into(), exact.into(), asym.into(), red::bayes_constant(u)?.into()]);
        }
    }
    Ok(t)
}

/// Exact identities get PASS/FAIL; asymptotic ones report their scaled gap
/// as INFO. Returns the number of failures.
fn identities_table(p: &IdentityParams, tol: f64) -> qredux::Result<(Table, usize)> {
    let mut t = Table::new(&["identity", "residual", "status"]);
    let mut failed = 0;
    for id in Identity::EXACT.iter().chain(&Identity::ASYMPTOTIC).copied() {
        let (value, status) = match identity_check(id, p) {
            Ok(v) if !id.is_exact() => (v, "INFO"),
            Ok(v) if v <= tol => (v, "PASS"),
            Ok(v) => {
                failed += 1;
                (v, "FAIL")
            }
            // B5 at u = 0 and B6 outside its α range do not apply
            Err(Error::Domain(_)) if matches!(id, Identity::B5 | Identity::B6) => (f64::NAN, "SKIP"),
            Err(e) => return Err(e),
        };
        t.push(vec![id.name().into(), value.into(), status.into()]);
    }
    Ok((t, failed))
}
