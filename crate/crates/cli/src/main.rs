//! `verify`: runs the named checks and prints one report per line.

use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use paraferm::characters::string_function_table;
use paraferm::checks::{run_all, run_check, CheckError, CheckParams, REGISTRY};
use paraferm::report::Report;
use paraferm::{Exp, Rational};

#[derive(Parser)]
#[command(name = "verify", version, about = "Exact checks for sl2 parafermion vertex algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write to FILE instead of stdout.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Clone)]
struct CheckArgs {
    /// Level k.
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    i: Option<i64>,
    #[arg(long)]
    j: Option<i64>,
    /// Largest conformal weight examined.
    #[arg(long, env = "PARAFERM_TRUNCATION")]
    max_weight: Option<i64>,
    /// Largest symbol index for w1inf-generation.
    #[arg(long)]
    max: Option<u32>,
    /// Seed for randomized spot checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl CheckArgs {
    fn params(&self) -> CheckParams {
        CheckParams {
            k: self.k,
            i: self.i,
            j: self.j,
            max_weight: self.max_weight,
            max: self.max,
            seed: self.seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// OPE relations among H, E, F.
    Ope(CheckArgs),
    /// W3 is the unique weight 3 Virasoro singular vector of the commutant.
    SingularVector(CheckArgs),
    /// (E_-1)^k 1 is nonzero and (E_-1)^{k+1} 1 vanishes.
    EkPower(CheckArgs),
    /// Character decomposition of L(k,0).
    Lk0Decomposition(CheckArgs),
    /// Character decomposition of L(k,i); all i unless --i is given.
    LkiDecomposition(CheckArgs),
    /// Commutant dimensions against string functions.
    StringDualRoute(CheckArgs),
    /// Top weights of M^{i,j} and their W-algebra images; all k <= 20 unless --k.
    TopWeightMatch(CheckArgs),
    /// Number of inequivalent simple modules; all k <= 20 unless --k.
    SimpleCount(CheckArgs),
    /// The identification search.
    Identify(CheckArgs),
    /// Generation of the W_{1+inf} symbol algebra.
    W1infGeneration(CheckArgs),
    /// Leading terms of Y(e^{gamma/k}, z) e^{-gamma/k}.
    IntertwinerLeading(CheckArgs),
    /// Central charges of the three conformal vectors.
    CentralCharge(CheckArgs),
    /// Every check for 3 <= k <= kmax.
    All {
        #[arg(long, default_value_t = 4)]
        kmax: i64,
        #[arg(long, env = "PARAFERM_TRUNCATION", default_value_t = 6)]
        max_weight: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// String function coefficient tables of level k as JSON lines.
    Strings {
        #[arg(long)]
        k: i64,
        #[arg(long, env = "PARAFERM_TRUNCATION", default_value_t = 6)]
        max_weight: i64,
    },
    /// Names of the registered checks.
    List,
}

impl Command {
    fn check(&self) -> Option<(&'static str, &CheckArgs)> {
        let (name, args) = match self {
            Command::Ope(a) => ("ope", a),
            Command::SingularVector(a) => ("singular-vector", a),
            Command::EkPower(a) => ("ek-power", a),
            Command::Lk0Decomposition(a) => ("lk0-decomposition", a),
            Command::LkiDecomposition(a) => ("lki-decomposition", a),
            Command::StringDualRoute(a) => ("string-dual-route", a),
            Command::TopWeightMatch(a) => ("top-weight-match", a),
            Command::SimpleCount(a) => ("simple-count", a),
            Command::Identify(a) => ("identify", a),
            Command::W1infGeneration(a) => ("w1inf-generation", a),
            Command::IntertwinerLeading(a) => ("intertwiner-leading", a),
            Command::CentralCharge(a) => ("central-charge", a),
            _ => return None,
        };
        Some((name, args))
    }
}

fn render(reports: &[Report], format: Format) -> String {
    reports
        .iter()
        .map(|r| match format {
            Format::Json => r.to_json() + "\n",
            Format::Table => r.to_table(),
        })
        .collect()
}

fn emit(text: &str, out: &Option<String>) -> io::Result<()> {
    match out {
        Some(path) => File::create(path)?.write_all(text.as_bytes()),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn fail(e: CheckError) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        CheckError::UnknownCheck(_) | CheckError::BadParams(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let reports = match &cli.command {
        Command::List => {
            let text: String = REGISTRY.iter().map(|c| format!("{:<22} {}\n", c.name, c.statement)).collect();
            return match emit(&text, &cli.output.out) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            };
        }
        Command::Strings { k, max_weight } => {
            if *k < 1 || *max_weight < 0 {
                eprintln!("error: need k >= 1 and a nonnegative max weight");
                return ExitCode::from(2);
            }
            let rows = match string_function_table::<Rational>(*k, Exp::from_integer(max_weight + 1)) {
                Ok(rows) => rows,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let text: String = rows
                .iter()
                .map(|r| serde_json::to_string(r).expect("rows serialize") + "\n")
                .collect();
            return match emit(&text, &cli.output.out) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            };
        }
        Command::All { kmax, max_weight, seed } => match run_all(*kmax, *max_weight, *seed) {
            Ok(r) => r,
            Err(e) => return fail(e),
        },
        cmd => {
            let (name, args) = cmd.check().expect("remaining commands are checks");
            match run_check(name, &args.params()) {
                Ok(r) => vec![r],
                Err(e) => return fail(e),
            }
        }
    };
    if let Err(e) = emit(&render(&reports, cli.output.format), &cli.output.out) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if reports.iter().all(Report::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
