//! `apery`: compute, tabulate and cross-verify `a(n) = P_n(3)` and
//! `b(n) = v_3(a(n))`.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error.

use std::io::{self, Write};
use std::process::ExitCode;

use apery_core::digit_formula::{
    b_closed, b_closed_alt, b_rec_one_level, b_rec_two_level, ones_profile, ternary_digits,
};
use apery_core::linrep::{integer_rank, kernel_matrix, valuation_representation, LinearRep};
use apery_core::numbers::{apery_barnes, apery_convolution, apery_direct, apery_recurrence_range};
use apery_core::valuation::v_adic;
use apery_core::verify::{run_suite_with, Suite, VerifyReport};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

const MAX_KERNEL_DEPTH: u32 = 6;

#[derive(Parser)]
#[command(name = "apery", version, about = "Exact central Delannoy numbers and their 3-adic valuations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a(n) or b(n) computed by one method.
    Compute {
        #[arg(long, value_enum)]
        what: What,
        /// a: direct, barnes, convolution, recurrence.
        /// b: closed, closed-alt, thm1, thm3, linrep, oracle.
        #[arg(long)]
        method: String,
        n: BigUint,
    },
    /// Cross-check methods over lo..=hi and print a JSON report.
    Verify {
        #[arg(long)]
        suite: Suite,
        lo: BigUint,
        /// Defaults to a per-suite budget (2000 for a-methods and b-vs-oracle).
        hi: Option<BigUint>,
        /// Add one to the top-left entry of mu(1) before verifying.
        #[arg(long, hide = true)]
        perturb_mu1: bool,
    },
    /// Emit one row per n in lo..=hi.
    Table {
        lo: BigUint,
        hi: BigUint,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Comma-separated subset of n,a,b,digits,r,s.
        #[arg(long, default_value = "n,a,b")]
        columns: String,
    },
    /// Rank of the 3-kernel matrix of b(n).
    Kernel {
        #[arg(long)]
        depth: u32,
        #[arg(long = "len")]
        len: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    A,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Column {
    N,
    A,
    B,
    Digits,
    R,
    S,
}

impl Column {
    fn parse(s: &str) -> Option<Column> {
        Some(match s {
            "n" => Column::N,
            "a" => Column::A,
            "b" => Column::B,
            "digits" => Column::Digits,
            "r" => Column::R,
            "s" => Column::S,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Column::N => "n",
            Column::A => "a",
            Column::B => "b",
            Column::Digits => "digits",
            Column::R => "r",
            Column::S => "s",
        }
    }
}

enum Failure {
    Usage(String),
    Mismatch,
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

impl From<apery_core::Error> for Failure {
    fn from(e: apery_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| run(cli.command));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> CliResult {
    let Ok(raw) = std::env::var("APERY_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("APERY_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot start worker pool: {e}")))
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Compute { what, method, n } => compute(what, &method, &n),
        Command::Verify { suite, lo, hi, perturb_mu1 } => verify(suite, &lo, hi.as_ref(), perturb_mu1),
        Command::Table { lo, hi, format, columns } => table(&lo, &hi, format, &columns),
        Command::Kernel { depth, len } => kernel(depth, len),
    }
}

fn to_u64(v: &BigUint, what: &str) -> Result<u64, Failure> {
    v.to_u64()
        .ok_or_else(|| Failure::Usage(format!("{what} = {v} is too large for this command")))
}

fn print_line(s: impl std::fmt::Display) -> CliResult {
    let mut out = io::stdout().lock();
    writeln!(out, "{s}")?;
    Ok(())
}

fn compute(what: What, method: &str, n: &BigUint) -> CliResult {
    match what {
        What::A => {
            let n = to_u64(n, "n")?;
            let value = match method {
                "direct" => apery_direct(n),
                "barnes" => apery_barnes(n)?,
                "convolution" => apery_convolution(n),
                "recurrence" => apery_recurrence_range(n)?.pop().expect("prefix is never empty"),
                _ => return Err(unknown_method("a", method)),
            };
            print_line(value)
        }
        What::B => {
            let value = match method {
                "closed" => b_closed(n),
                "closed-alt" => b_closed_alt(n),
                "thm1" => b_rec_two_level(n),
                "thm3" => b_rec_one_level(n),
                "linrep" => return print_line(valuation_representation().evaluate(n)),
                "oracle" => {
                    let a = apery_direct(to_u64(n, "n")?);
                    return print_line(v_adic(&a, 3)?);
                }
                _ => return Err(unknown_method("b", method)),
            };
            print_line(value)
        }
    }
}

fn unknown_method(what: &str, method: &str) -> Failure {
    let known = match what {
        "a" => "direct, barnes, convolution, recurrence",
        _ => "closed, closed-alt, thm1, thm3, linrep, oracle",
    };
    Failure::Usage(format!("unknown method '{method}' for --what {what} (expected one of: {known})"))
}

fn perturbed_representation() -> LinearRep {
    let rep = valuation_representation();
    let mut mu1 = rep.matrix(1).clone();
    mu1.set(0, 0, mu1.get(0, 0) + 1);
    rep.with_matrix(1, mu1).expect("perturbing mu(1) keeps the representation well formed")
}

fn verify(suite: Suite, lo: &BigUint, hi: Option<&BigUint>, perturb_mu1: bool) -> CliResult {
    let lo = to_u64(lo, "lo")?;
    let hi = match hi {
        Some(hi) => to_u64(hi, "hi")?,
        None => suite.default_hi(),
    };
    if lo > hi {
        return Err(Failure::Usage(format!("lo = {lo} exceeds hi = {hi}")));
    }
    let rep = if perturb_mu1 { perturbed_representation() } else { valuation_representation() };
    let report = run_suite_with(suite, lo, hi, &rep)?;
    print_line(report_json(&report))?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn report_json(report: &VerifyReport) -> Value {
    let mismatch = match &report.first_mismatch {
        None => Value::Null,
        Some(m) => json!({
            "n": m.n.to_string(),
            "lhs_method": m.lhs_method,
            "lhs": m.lhs,
            "rhs_method": m.rhs_method,
            "rhs": m.rhs,
        }),
    };
    json!({
        "suite": report.suite.name(),
        "lo": report.lo.to_string(),
        "hi": report.hi.to_string(),
        "mismatch": mismatch,
        "elapsed_ms": report.elapsed_ms as u64,
    })
}

fn parse_columns(spec: &str) -> Result<Vec<Column>, Failure> {
    spec.split(',')
        .map(|c| {
            Column::parse(c.trim())
                .ok_or_else(|| Failure::Usage(format!("unknown column '{c}' (expected n,a,b,digits,r,s)")))
        })
        .collect()
}

fn table(lo: &BigUint, hi: &BigUint, format: Format, columns: &str) -> CliResult {
    let columns = parse_columns(columns)?;
    let lo = to_u64(lo, "lo")?;
    let hi = to_u64(hi, "hi")?;
    if lo > hi {
        return Err(Failure::Usage(format!("empty range: lo = {lo} exceeds hi = {hi}")));
    }
    let a_values = if columns.contains(&Column::A) {
        let mut prefix = apery_recurrence_range(hi)?;
        prefix.drain(..lo as usize);
        prefix
    } else {
        Vec::new()
    };

    let row = |n: u64| -> Vec<(Column, Value)> {
        let expansion = ternary_digits(&n);
        let profile = ones_profile(&expansion);
        columns
            .iter()
            .map(|&c| {
                let v = match c {
                    Column::N => json!(n),
                    Column::A => json!(a_values[(n - lo) as usize].to_string()),
                    Column::B => json!(b_closed(&n)),
                    Column::Digits => json!(expansion.to_msd_string()),
                    Column::R => json!(profile.r),
                    Column::S => json!(profile.s),
                };
                (c, v)
            })
            .collect()
    };

    let stdout = io::stdout().lock();
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(stdout);
            let write_err = |e: csv::Error| Failure::Usage(format!("csv output: {e}"));
            w.write_record(columns.iter().map(|c| c.name())).map_err(write_err)?;
            for n in lo..=hi {
                let fields = row(n).into_iter().map(|(_, v)| csv_field(&v));
                w.write_record(fields).map_err(write_err)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let rows: Vec<Value> = (lo..=hi)
                .map(|n| {
                    let obj: Map<String, Value> =
                        row(n).into_iter().map(|(c, v)| (c.name().to_string(), v)).collect();
                    Value::Object(obj)
                })
                .collect();
            let mut out = io::BufWriter::new(stdout);
            serde_json::to_writer(&mut out, &rows).map_err(|e| Failure::Usage(e.to_string()))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Scalars bare, strings unquoted, lists as `[x,y]`.
fn csv_field(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn kernel(depth: u32, len: usize) -> CliResult {
    if depth > MAX_KERNEL_DEPTH {
        return Err(Failure::Usage(format!("depth {depth} exceeds the maximum of {MAX_KERNEL_DEPTH}")));
    }
    if len == 0 {
        return Err(Failure::Usage("--len must be at least 1".into()));
    }
    let m = kernel_matrix(|n| b_closed(&n) as i64, 3, depth, len)?;
    let report = json!({
        "depth": depth,
        "prefix_len": len,
        "rows": m.rows(),
        "rank": integer_rank(&m),
    });
    print_line(report)
}
