mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

/// Degrees above this need `--unsafe-degree`.
pub const DEGREE_CAP: u32 = 30;

#[derive(Parser, Debug)]
#[command(name = "rootmean", version, about = "Mean values of polynomial derivatives over root families")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long, global = true, value_enum, default_value = "pretty")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "ROOTMEAN_THREADS")]
    pub threads: Option<usize>,
    /// Allow degrees above the cap of 30.
    #[arg(long, global = true)]
    pub unsafe_degree: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normalized Girard-Waring expansions of the power-sum means.
    Gw {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 8)]
        max_deg: u32,
    },
    /// Exact phi(D, delta, rho) over a window of rho.
    Phi {
        #[arg(long = "D")]
        d: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        delta: i64,
        /// `lo..hi`, inclusive; default D-10..D-1.
        #[arg(long, allow_hyphen_values = true)]
        rho: Option<String>,
    },
    /// Integer relations among phi(D, delta, rho) over a window of rho.
    Relations {
        #[arg(long = "D")]
        d: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        delta: i64,
        /// `lo..hi`, inclusive; default 1..D-1 for delta = 0, else 0..D-1.
        #[arg(long, allow_hyphen_values = true)]
        rho: Option<String>,
        /// Also enumerate the relations of minimal support.
        #[arg(long)]
        minimal_support: bool,
    },
    /// Exact verification of a conjectured pattern up to a degree.
    Verify {
        #[arg(long, value_enum)]
        conjecture: Conjecture,
        #[arg(long, default_value_t = 9)]
        max_degree: u32,
    },
    /// Seeded floating-point cross-checks against directly computed roots.
    NumericCheck(NumericArgs),
    /// Fits t_k(D), extracts Q_k and the Norlund leading coefficients.
    Mine {
        #[arg(long, default_value_t = 8)]
        k_max: u32,
        /// Largest degree swept; default k_max + 3.
        #[arg(long)]
        d_sweep: Option<u32>,
        /// OEIS b-file to compare against; repeatable.
        #[arg(long)]
        oeis_bfile: Vec<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Conjecture {
    OddBinomial,
    Inheritance,
    Prop4,
    Prop5,
    Dimension,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NumericConjecture {
    RelativeRates,
    Translation,
}

#[derive(Args, Debug, Clone)]
pub struct NumericArgs {
    /// Relation as `a@rho` terms, e.g. `5@1,-6@2,1@3`.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["auto", "conjecture"])]
    pub relation: Option<String>,
    /// Check every relation found for `--D`.
    #[arg(long, conflicts_with = "conjecture")]
    pub auto: bool,
    #[arg(long, value_enum)]
    pub conjecture: Option<NumericConjecture>,
    #[arg(long = "D")]
    pub d: Option<u32>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub delta: i64,
    #[arg(long, default_value_t = 10)]
    pub max_degree: u32,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = rootmean::numeric::REL_TOL)]
    pub tol: f64,
}

/// Exit status for errors raised before any output is produced.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn config(msg: impl Into<String>) -> Self {
        Self { code: 2, msg: msg.into() }
    }
}

impl From<rootmean::Error> for Failure {
    fn from(e: rootmean::Error) -> Self {
        use rootmean::Error::*;
        let code = match &e {
            NoConvergence { .. } => 3,
            NotARelation(_) | NotPolynomial(_) | Structure(_) => 1,
            _ => 2,
        };
        Self { code, msg: e.to_string() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Self { code: 2, msg: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self { code: 2, msg: e.to_string() }
    }
}

impl RunConfig {
    pub fn check_degree(&self, what: &str, d: u32) -> Result<(), Failure> {
        if d > DEGREE_CAP && !self.unsafe_degree {
            return Err(Failure::config(format!(
                "{what} = {d} exceeds the cap of {DEGREE_CAP}; pass --unsafe-degree to override"
            )));
        }
        Ok(())
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if let Some(n) = cli.run.threads {
        if n == 0 {
            return Err(Failure::config("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::config(e.to_string()))?;
    }
    let run = &cli.run;
    let (name, doc) = match cli.cmd {
        Command::Gw { n, max_deg } => ("gw", commands::gw(run, n, max_deg)?),
        Command::Phi { d, delta, rho } => ("phi", commands::phi(run, d, delta, rho.as_deref())?),
        Command::Relations {
            d,
            delta,
            rho,
            minimal_support,
        } => (
            "relations",
            commands::relations(run, d, delta, rho.as_deref(), minimal_support)?,
        ),
        Command::Verify { conjecture, max_degree } => ("verify", commands::verify(run, conjecture, max_degree)?),
        Command::NumericCheck(args) => ("numeric-check", commands::numeric(run, &args)?),
        Command::Mine {
            k_max,
            d_sweep,
            oeis_bfile,
        } => ("mine", commands::mine(run, k_max, d_sweep, &oeis_bfile)?),
    };
    let bytes = doc.render(run.format, name, run.seed)?;
    output::emit(&bytes, run.output.as_deref())?;
    Ok(doc.status.code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
