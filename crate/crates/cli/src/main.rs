mod commands;
mod output;

use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact DT invariants of the m-loop quiver.
#[derive(Parser, Debug)]
#[command(name = "qdt", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of DT invariants over a grid of (m, n).
    Dt(DtArgs),
    /// Print F(q,t), F(t), H(q,t) or Log H(q,t) to a truncation order.
    Series(SeriesArgs),
    /// List the primitive cyclic classes of U_n.
    Necklaces(NecklaceArgs),
    /// List the sequences H_{n,d} and compare their number with DT_n.
    Higgs(HiggsArgs),
    /// Run the consistency checks.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Grid {
    /// A single value of m.
    #[arg(long, conflicts_with = "m_max")]
    m: Option<u64>,
    /// All m from 1 to this value.
    #[arg(long)]
    m_max: Option<u64>,
    /// A single value of n.
    #[arg(long, conflicts_with = "n_max")]
    n: Option<u64>,
    /// All n from 1 to this value.
    #[arg(long)]
    n_max: Option<u64>,
}

#[derive(Args, Debug)]
struct Level {
    /// Formula only (plus the series route for --quantized).
    #[arg(long, conflicts_with = "full")]
    fast: bool,
    /// Every route.
    #[arg(long)]
    full: bool,
}

#[derive(Args, Debug)]
struct DtArgs {
    #[command(flatten)]
    grid: Grid,
    /// Also compute DT_n(q).
    #[arg(long)]
    quantized: bool,
    #[command(flatten)]
    level: Level,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesName {
    #[value(name = "F", alias = "f")]
    F,
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "LogH", alias = "logh")]
    LogH,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[arg(value_enum)]
    name: SeriesName,
    #[arg(long)]
    m: u64,
    /// Number of coefficients, t^0 to t^(order-1).
    #[arg(long, default_value_t = 8)]
    order: usize,
    /// F(t) = F(1,t) instead of F(q,t).
    #[arg(long)]
    numeric: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct NecklaceArgs {
    #[arg(long)]
    m: u64,
    #[arg(long)]
    n: u64,
    /// Include the classes of period n/2 (m even, n = 2 mod 4).
    #[arg(long)]
    plus: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct HiggsArgs {
    #[arg(long)]
    m: u64,
    #[arg(long)]
    n: u64,
    #[arg(long, allow_hyphen_values = true)]
    d: i64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Run only this check.
    #[arg(long)]
    check: Option<String>,
    #[command(flatten)]
    grid: Grid,
    #[command(flatten)]
    level: Level,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// Outcome of a command: whether every comparison it made held.
pub type CommandResult = Result<bool, CommandError>;

#[derive(Debug)]
pub enum CommandError {
    Usage(String),
    Failed(String),
}

impl From<qdt_core::Error> for CommandError {
    fn from(e: qdt_core::Error) -> Self {
        CommandError::Failed(e.to_string())
    }
}

fn range(single: Option<u64>, max: Option<u64>, what: &str) -> Result<Option<RangeInclusive<u64>>, CommandError> {
    let r = match (single, max) {
        (Some(v), _) => v..=v,
        (None, Some(v)) => 1..=v,
        (None, None) => return Ok(None),
    };
    if *r.start() == 0 || r.is_empty() {
        return Err(CommandError::Usage(format!("{what} must be at least 1")));
    }
    Ok(Some(r))
}

fn required(r: Option<RangeInclusive<u64>>, what: &str) -> Result<RangeInclusive<u64>, CommandError> {
    r.ok_or_else(|| CommandError::Usage(format!("give --{what} or --{what}-max")))
}

fn configure_threads() -> Result<(), CommandError> {
    let Ok(value) = std::env::var("QDT_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t >= 1)
        .ok_or_else(|| CommandError::Usage(format!("QDT_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CommandError::Failed(e.to_string()))
}

fn run(cli: Cli) -> CommandResult {
    configure_threads()?;
    match cli.command {
        Command::Dt(a) => {
            let ms = required(range(a.grid.m, a.grid.m_max, "m")?, "m")?;
            let ns = required(range(a.grid.n, a.grid.n_max, "n")?, "n")?;
            commands::dt(ms, ns, a.quantized, a.level.full, a.format)
        }
        Command::Series(a) => {
            if a.m == 0 || a.order == 0 {
                return Err(CommandError::Usage("--m and --order must be at least 1".into()));
            }
            if a.numeric && a.name != SeriesName::F {
                return Err(CommandError::Usage("--numeric applies only to F".into()));
            }
            commands::series(a.name, a.m, a.order, a.numeric, a.format)
        }
        Command::Necklaces(a) => {
            if a.m == 0 || a.n == 0 {
                return Err(CommandError::Usage("--m and --n must be at least 1".into()));
            }
            commands::necklaces(a.m, a.n, a.plus, a.format)
        }
        Command::Higgs(a) => {
            if a.m == 0 || a.n == 0 {
                return Err(CommandError::Usage("--m and --n must be at least 1".into()));
            }
            commands::higgs(a.m, a.n, a.d, a.format)
        }
        Command::Verify(a) => {
            let ms = range(a.grid.m, a.grid.m_max, "m")?;
            let ns = range(a.grid.n, a.grid.n_max, "n")?;
            commands::verify(a.check.as_deref(), ms, ns, a.level.full, a.format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CommandError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CommandError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
