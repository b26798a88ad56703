//! `primepi` command-line interface.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or domain error.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gamma_upsilon::{gamma_vector, upsilon};
use crate::pi_exact::{
    oracle_limit, pi_exact, verify_overlap_with_mode, verify_theorem, PiMethod, PiValue,
    VerificationReport, VerifyMode,
};
use crate::primes::{sieve_bits, PrimeTable, DEFAULT_SIEVE_BUDGET_BITS};
use crate::sigma::{sigma_vector, EvalPoint};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Environment variable holding the oracle sieve budget in bits.
pub const SIEVE_BUDGET_ENV: &str = "PRIMEPI_MAX_SIEVE";

const MAX_BENCH_EXPONENT: u32 = 9;

#[derive(Debug, Parser)]
#[command(
    name = "primepi",
    version,
    about = "Exact prime counting via symmetric floor-sums"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate π(x) for a non-negative decimal x
    Pi {
        x: String,
        /// Show the selected interval and the Υ term breakdown
        #[arg(long)]
        explain: bool,
    },
    /// Evaluate σ_{n,m}(x)
    Sigma { n: usize, m: usize, x: String },
    /// Evaluate γ_{n,m}(x)
    Gamma { n: usize, m: usize, x: String },
    /// Evaluate Υ_n(x)
    Upsilon { n: usize, x: String },
    /// Check Υ_n against the sieve on each interval (p_n, p_{n+1}²)
    Verify {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// Check this many random points per interval instead of all of them
        #[arg(long)]
        sample: Option<u64>,
        /// Seed for --sample
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Tabulate π(x) for x = from, from+step, ... <= to
    Table {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, default_value_t = 1)]
        step: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Time π(10^e) for each exponent e
    Bench {
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        exponents: Vec<u32>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// `n_used` column: the `n` of `Υ_n`, or `"base"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NUsed {
    Base,
    N(usize),
}

impl Serialize for NUsed {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NUsed::Base => s.serialize_str("base"),
            NUsed::N(n) => s.serialize_u64(*n as u64),
        }
    }
}

impl std::fmt::Display for NUsed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NUsed::Base => f.write_str("base"),
            NUsed::N(n) => write!(f, "{n}"),
        }
    }
}

/// One row of `table` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutputRecord {
    pub x: String,
    pub pi: u64,
    pub n_used: NUsed,
    pub elapsed_ns: u64,
}

impl OutputRecord {
    pub fn new(value: &PiValue, elapsed_ns: u64) -> Self {
        let n_used = match value.method {
            PiMethod::BaseCase(_) => NUsed::Base,
            PiMethod::Upsilon(sel) => NUsed::N(sel.n),
        };
        Self {
            x: value.x.raw().to_string(),
            pi: value.value,
            n_used,
            elapsed_ns,
        }
    }
}

pub const CSV_HEADER: &str = "x,pi,n_used,elapsed_ns";

/// Oracle sieve budget from the environment, or the default.
pub fn sieve_budget() -> Result<u64> {
    match std::env::var(SIEVE_BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::InvalidArgument(format!("{SIEVE_BUDGET_ENV}={v:?} is not a bit count"))
        }),
        Err(_) => Ok(DEFAULT_SIEVE_BUDGET_BITS),
    }
}

enum Failure {
    Usage(String),
    Mismatch,
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Pi { x, explain } => cmd_pi(&x, explain, out),
        Command::Sigma { n, m, x } => cmd_sigma(n, m, &x, out),
        Command::Gamma { n, m, x } => cmd_gamma(n, m, &x, out),
        Command::Upsilon { n, x } => cmd_upsilon(n, &x, out),
        Command::Verify {
            n_min,
            n_max,
            sample,
            seed,
        } => cmd_verify(n_min, n_max, sample, seed, out),
        Command::Table {
            from,
            to,
            step,
            format,
        } => cmd_table(from, to, step, format, out),
        Command::Bench { exponents } => cmd_bench(&exponents, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Mismatch) => EXIT_MISMATCH,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            let _ = writeln!(err, "run `primepi --help` for usage");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn cmd_pi(x: &str, explain: bool, out: &mut impl Write) -> CmdResult {
    let x = EvalPoint::parse(x)?;
    let table = PrimeTable::covering_sqrt(x.floor_value())?;
    let pi = pi_exact(&x, &table)?;
    writeln!(out, "{}", pi.value)?;
    if explain {
        match pi.method {
            PiMethod::BaseCase(case) => writeln!(out, "method=base case={case:?}")?,
            PiMethod::Upsilon(sel) => {
                let u = upsilon(sel.n, &x, &table)?;
                writeln!(out, "n={}", sel.n)?;
                writeln!(out, "interval=({},{})", sel.lower, sel.upper)?;
                writeln!(out, "floor_x={}", u.terms.floor)?;
                writeln!(out, "sigma_1={}", u.terms.sigma_1)?;
                writeln!(out, "weighted_gamma_sum={}", u.terms.weighted_gamma)?;
                writeln!(out, "constant={}", u.terms.constant)?;
            }
        }
    }
    Ok(())
}

/// Table holding at least `n` primes and enough more to pass the primorial
/// cutoff of any supported `x`.
fn table_for(n: usize) -> Result<PrimeTable> {
    PrimeTable::with_at_least_within(n.max(16), sieve_budget()?).map_err(|e| match e {
        Error::SieveBudget { .. } => Error::InvalidArgument(format!("n = {n} is too large: {e}")),
        other => other,
    })
}

fn cmd_sigma(n: usize, m: usize, x: &str, out: &mut impl Write) -> CmdResult {
    let x = EvalPoint::parse(x)?;
    if m == 0 || m > n {
        return Err(Failure::Usage(format!(
            "σ_{{n,m}} needs 1 <= m <= n, got n={n} m={m}"
        )));
    }
    let sigma = sigma_vector(n, &x, &table_for(n)?)?;
    writeln!(out, "{}", sigma.get(m).unwrap_or(0))?;
    Ok(())
}

fn cmd_gamma(n: usize, m: usize, x: &str, out: &mut impl Write) -> CmdResult {
    let x = EvalPoint::parse(x)?;
    if m < 2 || m > n {
        return Err(Failure::Usage(format!(
            "γ_{{n,m}} needs 2 <= m <= n, got n={n} m={m}"
        )));
    }
    let gamma = gamma_vector(n, &x, &table_for(n)?)?;
    writeln!(out, "{}", gamma.get(m).unwrap_or_default())?;
    Ok(())
}

fn cmd_upsilon(n: usize, x: &str, out: &mut impl Write) -> CmdResult {
    let x = EvalPoint::parse(x)?;
    let u = upsilon(n, &x, &table_for(n)?)?;
    writeln!(out, "{}", u.value)?;
    Ok(())
}

fn print_report(
    label: &str,
    report: &VerificationReport,
    out: &mut impl Write,
) -> std::io::Result<()> {
    for r in &report.intervals {
        writeln!(
            out,
            "{label} n={} interval=({},{}) x={}..={} checked={} mismatches={} {}",
            r.interval.n,
            r.interval.lower,
            r.interval.upper,
            r.first,
            r.last,
            r.checked,
            r.mismatches.len(),
            if r.passed() { "PASS" } else { "FAIL" }
        )?;
        for m in &r.mismatches {
            writeln!(
                out,
                "  mismatch n={} x={} expected={} got={}",
                m.n, m.x, m.expected, m.got
            )?;
        }
    }
    Ok(())
}

fn cmd_verify(
    n_min: usize,
    n_max: usize,
    sample: Option<u64>,
    seed: u64,
    out: &mut impl Write,
) -> CmdResult {
    if n_min < 2 || n_min > n_max {
        return Err(Failure::Usage(format!(
            "need 2 <= n_min <= n_max, got n_min={n_min} n_max={n_max}"
        )));
    }
    let mode = match sample {
        Some(0) => return Err(Failure::Usage("--sample must be positive".into())),
        Some(count) => VerifyMode::Sampled { count, seed },
        None => VerifyMode::Exhaustive,
    };
    let budget = sieve_budget()?;
    let index = PrimeTable::with_at_least_within(n_max + 1, budget)?;
    let limit = oracle_limit(n_max, &index)?;
    if sieve_bits(limit) > budget {
        return Err(Failure::Usage(format!(
            "the oracle sieve to {limit} needs {} bits, over the {SIEVE_BUDGET_ENV} budget of {budget}",
            sieve_bits(limit)
        )));
    }
    let table = PrimeTable::generate_within(limit, budget)?;

    let theorem = verify_theorem(n_min, n_max, &table, mode)?;
    print_report("theorem", &theorem, out)?;
    let mut overlap = VerificationReport::default();
    for n in n_min..n_max {
        overlap.merge(verify_overlap_with_mode(n, &table, mode)?);
    }
    print_report("overlap", &overlap, out)?;

    let checks = theorem.total_checked() + overlap.total_checked();
    let mismatches = theorem.mismatches().count() + overlap.mismatches().count();
    writeln!(out, "total checks={checks} mismatches={mismatches}")?;
    if mismatches == 0 {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn cmd_table(from: u64, to: u64, step: u64, format: Format, out: &mut impl Write) -> CmdResult {
    if from > to {
        return Err(Failure::Usage(format!(
            "--from {from} is greater than --to {to}"
        )));
    }
    if step == 0 {
        return Err(Failure::Usage("--step must be at least 1".into()));
    }
    let table = PrimeTable::covering_sqrt(to)?;
    let mut records = Vec::new();
    let mut x = from;
    loop {
        let point = EvalPoint::from_integer(x);
        let start = Instant::now();
        let value = pi_exact(&point, &table)?;
        let elapsed = start.elapsed().as_nanos() as u64;
        records.push(OutputRecord::new(&value, elapsed));
        match x.checked_add(step) {
            Some(next) if next <= to => x = next,
            _ => break,
        }
    }
    match format {
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in &records {
                writeln!(out, "{},{},{},{}", r.x, r.pi, r.n_used, r.elapsed_ns)?;
            }
        }
        Format::Json => {
            let text =
                serde_json::to_string(&records).map_err(|e| Failure::Usage(e.to_string()))?;
            writeln!(out, "{text}")?;
        }
    }
    Ok(())
}

fn cmd_bench(exponents: &[u32], out: &mut impl Write) -> CmdResult {
    if let Some(e) = exponents.iter().find(|&&e| e > MAX_BENCH_EXPONENT) {
        return Err(Failure::Usage(format!(
            "exponent {e} is outside the supported range 0..={MAX_BENCH_EXPONENT}"
        )));
    }
    let budget = sieve_budget()?;
    let mut mismatch = false;
    for &e in exponents {
        let x = 10u64.pow(e);
        let point = EvalPoint::from_integer(x);
        let start = Instant::now();
        let table = PrimeTable::covering_sqrt(x)?;
        let pi = pi_exact(&point, &table)?;
        let elapsed = start.elapsed();
        let n_used = match pi.method.n() {
            Some(n) => n.to_string(),
            None => "base".to_string(),
        };
        let check = if x >= 2 && sieve_bits(x) <= budget {
            let oracle = PrimeTable::generate_within(x, budget)?.pi_sieve(x)?;
            if oracle == pi.value {
                "sieve=match".to_string()
            } else {
                mismatch = true;
                format!("sieve=MISMATCH({oracle})")
            }
        } else {
            "sieve=skipped".to_string()
        };
        writeln!(
            out,
            "x=10^{e} pi={} n={n_used} elapsed_ms={:.3} {check}",
            pi.value,
            elapsed.as_secs_f64() * 1e3
        )?;
    }
    if mismatch {
        Err(Failure::Mismatch)
    } else {
        Ok(())
    }
}
