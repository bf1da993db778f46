//! The `tmh` command line: `compute`, `sweep`, `verify`, `identities`.
//!
//! Exit codes: 0 success (and, for `verify`/`identities`, all checks
//! passed), 1 a check failed, 2 malformed input, 3 domain error, 4 I/O
//! error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::One;

use crate::error::Error;
use crate::identities::{a_number_identities, parity_identities};
use crate::invariants::{alpha, f_closed, f_difference, report, InvariantReport, SpinData};
use crate::record::{AlphaRecord, OutputRecord};
use crate::series::{genus_pairing, ExpSign};
use crate::spec::TwistSpec;
use crate::sweep::{evaluate_all, write_atomic, Interval, OutputFormat, SweepRange, TwistSource};
use crate::verify::{run_with, verification_specs, VerifyBounds};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "tmh",
    version,
    about = "Â-genus, α-invariant and PSC verdicts for twisted Milnor hypersurfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report every invariant of one hypersurface.
    Compute(ComputeArgs),
    /// Evaluate a grid of hypersurfaces into a CSV or JSON-lines file.
    Sweep(SweepArgs),
    /// Check the closed-form sum against the power-series pairing.
    Verify(VerifyArgs),
    /// Check the combinatorial and mod-2 identities.
    Identities(IdentitiesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FileFormat {
    Csv,
    Jsonl,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    #[arg(long)]
    n1: u32,
    #[arg(long)]
    n2: u32,
    /// Comma-separated twist vector, one entry per n2.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    twist: Vec<i64>,
    #[arg(long, allow_hyphen_values = true)]
    d1: i64,
    #[arg(long, allow_hyphen_values = true)]
    d2: i64,
    #[arg(long, value_enum, default_value = "json")]
    format: ReportFormat,
    /// Print only α; a non-spin hypersurface is an error (exit 3).
    #[arg(long)]
    alpha_only: bool,
    /// Add the evaluation time in microseconds.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// n1 range, `a..b` or `a`.
    #[arg(long, allow_hyphen_values = true)]
    n1: Interval,
    #[arg(long, allow_hyphen_values = true)]
    n2: Interval,
    #[arg(long, allow_hyphen_values = true)]
    d1: Interval,
    #[arg(long, allow_hyphen_values = true)]
    d2: Interval,
    /// Explicit twist vector (repeatable); each is used with the matching n2.
    /// Without it, vectors are generated from --max-nonzero/--twist-bound.
    #[arg(long = "twist", allow_hyphen_values = true, value_parser = parse_twist)]
    twists: Vec<Vec<i64>>,
    #[arg(long, default_value_t = 0)]
    max_nonzero: usize,
    #[arg(long, default_value_t = 0)]
    twist_bound: i64,
    #[arg(long)]
    spin_only: bool,
    #[arg(long)]
    out: PathBuf,
    /// Defaults to CSV for a `.csv` path and JSON lines otherwise.
    #[arg(long, value_enum)]
    format: Option<FileFormat>,
    #[arg(long, env = "TMH_JOBS")]
    jobs: Option<usize>,
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 3)]
    max_n1: u32,
    #[arg(long, default_value_t = 4)]
    max_n2: u32,
    /// Bound on the absolute value of twist entries.
    #[arg(long, default_value_t = 2)]
    max_twist: i64,
    /// Bound on |k1|, |k2| for the spin part of the grid.
    #[arg(long, default_value_t = 3)]
    max_k: i64,
    #[arg(long, default_value_t = 2)]
    max_nonzero: usize,
    /// Number of randomly drawn non-spin specs added to the grid.
    #[arg(long, default_value_t = 200)]
    random_nonspin: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "TMH_JOBS")]
    jobs: Option<usize>,
    /// Perturb the closed form on twisted specs, to exercise failure reporting.
    #[arg(long, hide = true)]
    corrupt_closed_form: bool,
}

#[derive(Debug, Args)]
struct IdentitiesArgs {
    /// Largest n for the A(n, l) family of identities.
    #[arg(long, default_value_t = 14)]
    depth: u64,
    /// Largest argument for the mod-2 reductions.
    #[arg(long, default_value_t = 200)]
    mod2_bound: u64,
    /// Largest argument for the Lucas check; defaults to --mod2-bound.
    #[arg(long)]
    lucas_bound: Option<u64>,
}

fn parse_twist(s: &str) -> Result<Vec<i64>, String> {
    if s.trim().is_empty() {
        return Err("empty twist vector".into());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| format!("twist entry {t:?}: {e}"))
        })
        .collect()
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Compute(a) => compute(a, out),
        Command::Sweep(a) => sweep(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Identities(a) => identities(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn io(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_IO,
            message: e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TwistLength { .. } | Error::Dimension { .. } => EXIT_INPUT,
            _ => EXIT_DOMAIN,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

fn compute(a: ComputeArgs, out: &mut dyn Write) -> CmdResult {
    let spec = TwistSpec::new(a.n1, a.n2, a.twist, a.d1, a.d2)?;
    let start = Instant::now();
    if a.alpha_only {
        let k = alpha(&spec)?;
        let rec = AlphaRecord::from(&k);
        let text = match a.format {
            ReportFormat::Json => serde_json::to_string(&rec).expect("serialisable"),
            ReportFormat::Table => format!(
                "alpha  {} in KO_{} mod 8 ({})",
                rec.value.as_deref().unwrap_or("0"),
                rec.n_mod_8,
                rec.group
            ),
        };
        writeln!(out, "{text}").map_err(Failure::io)?;
        return Ok(EXIT_OK);
    }
    let rep = report(&spec)?;
    let mut rec = OutputRecord::from_report(&rep);
    if a.timing {
        rec.elapsed_us = Some(start.elapsed().as_micros() as u64);
    }
    let text = match a.format {
        ReportFormat::Json => rec.to_json(),
        ReportFormat::Table => table(&rep, &rec),
    };
    writeln!(out, "{text}").map_err(Failure::io)?;
    Ok(EXIT_OK)
}

fn table(rep: &InvariantReport, rec: &OutputRecord) -> String {
    let mut rows: Vec<(&str, String)> = vec![
        ("hypersurface", rep.spec.to_string()),
        ("real dimension", rec.dim_real.to_string()),
        ("sigma1, sigma2", format!("{}, {}", rec.sigma1, rec.sigma2)),
    ];
    rows.push((
        "spin",
        match &rep.spin {
            SpinData::Spin { k1, k2 } => format!("yes (induced), k1 = {k1}, k2 = {k2}"),
            SpinData::NotSpin => "no (induced structure)".into(),
        },
    ));
    rows.push(("A-hat", rec.a_hat.clone()));
    if (rep.spec.n1() + rep.spec.n2()).is_multiple_of(2) {
        rows.push((
            "F(d) - F(-d)",
            format!("{} (dimension not 4m; no claim)", f_difference(&rep.spec)),
        ));
    }
    rows.push((
        "alpha",
        match &rec.alpha {
            Some(a) => format!(
                "{} in KO_{} mod 8 = {}",
                a.value.as_deref().unwrap_or("0"),
                a.n_mod_8,
                a.group
            ),
            None => "inapplicable (not spin)".into(),
        },
    ));
    rows.push(("psc", rec.psc.clone()));
    rows.push((
        "circle action",
        if rec.no_circle_action {
            "obstructed (spin, A-hat != 0)".into()
        } else {
            "not obstructed by A-hat".into()
        },
    ));
    rows.push((
        "assumptions",
        format!(
            "simply connected (assumed), dim >= 5: {}",
            if rec.assumptions.dim_ge_5 {
                "yes"
            } else {
                "no"
            }
        ),
    ));
    if let Some(us) = rec.elapsed_us {
        rows.push(("elapsed", format!("{us} us")));
    }
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn sweep(a: SweepArgs, out: &mut dyn Write) -> CmdResult {
    let twists = if a.twists.is_empty() {
        TwistSource::Generated {
            max_nonzero: a.max_nonzero,
            bound: a.twist_bound,
        }
    } else {
        TwistSource::Explicit(a.twists)
    };
    let range = SweepRange {
        n1: a.n1,
        n2: a.n2,
        twists,
        d1: a.d1,
        d2: a.d2,
        spin_only: a.spin_only,
    };
    let specs = range.specs();
    let records = evaluate_all(&specs, a.jobs, a.timing)?;
    let format = match a.format {
        Some(FileFormat::Csv) => OutputFormat::Csv,
        Some(FileFormat::Jsonl) => OutputFormat::Jsonl,
        None => OutputFormat::from_path(&a.out),
    };
    write_atomic(&a.out, format, &records).map_err(|e| Failure {
        code: EXIT_IO,
        message: format!("cannot write {}: {e}", a.out.display()),
    })?;
    writeln!(
        out,
        "wrote {} records to {}",
        records.len(),
        a.out.display()
    )
    .map_err(Failure::io)?;
    Ok(EXIT_OK)
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let bounds = VerifyBounds {
        max_n1: a.max_n1,
        max_n2: a.max_n2,
        max_twist: a.max_twist,
        max_k: a.max_k,
        max_nonzero: a.max_nonzero,
        random_nonspin: a.random_nonspin,
        seed: a.seed,
    };
    let specs = verification_specs(&bounds);
    let corrupt = a.corrupt_closed_form;
    let start = Instant::now();
    let outcome = run_with(
        &specs,
        |s| {
            let f = f_closed(s);
            if corrupt && s.twist().iter().any(|&i| i != 0) {
                f + BigRational::one()
            } else {
                f
            }
        },
        |s| genus_pairing(s, ExpSign::Plus),
        a.jobs,
    );
    let w = |out: &mut dyn Write, line: String| writeln!(out, "{line}").map_err(Failure::io);
    w(out, format!("checked: {}", outcome.checked))?;
    w(out, format!("failures: {}", outcome.failed))?;
    if let Some(cx) = &outcome.first_counterexample {
        w(
            out,
            format!(
                "first counterexample: {} closed form = {}, pairing = {}",
                cx.spec, cx.closed, cx.oracle
            ),
        )?;
    }
    w(
        out,
        format!("elapsed: {:.2} s", start.elapsed().as_secs_f64()),
    )?;
    Ok(if outcome.passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn identities(a: IdentitiesArgs, out: &mut dyn Write) -> CmdResult {
    let lucas_bound = a.lucas_bound.unwrap_or(a.mod2_bound);
    let checks: Vec<_> = a_number_identities(a.depth)
        .into_iter()
        .chain(parity_identities(lucas_bound, a.mod2_bound))
        .collect();
    for c in &checks {
        writeln!(out, "{c}").map_err(Failure::io)?;
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    writeln!(out, "identities: {} checked, {failed} failed", checks.len()).map_err(Failure::io)?;
    Ok(if failed == 0 {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
