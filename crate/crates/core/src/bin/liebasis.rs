use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use liebasis::basis_sets::BasisKind;
use liebasis::cli::{self, OutputFormat, RunConfig, EXIT_FAILURE, EXIT_INVALID};
use liebasis::completeness::Tolerances;
use liebasis::lie_core::RepKind;
use liebasis::Error;

#[derive(Parser)]
#[command(name = "liebasis", version, about = "Product vs coupled operator sets for su(n) tensor products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form and enumerated label counts for n = 2..=n_max
    Counts {
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Materialize a basis set on a product space and test its completeness
    Verify {
        #[command(flatten)]
        space: Space,
        #[arg(long, value_enum)]
        basis: Basis,
        /// Append the factor-exchange operator to the set
        #[arg(long)]
        with_exchange: bool,
        /// Commutation tolerance (relative)
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        cluster_tol: Option<f64>,
        #[arg(long)]
        scalar_tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Operator matrix cache (overrides LIEBASIS_CACHE_DIR)
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Isotypic decomposition of a product representation
    Decompose {
        #[command(flatten)]
        space: Space,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct Space {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    rep1: Rep,
    #[arg(long, value_enum)]
    rep2: Rep,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rep {
    Defining,
    Conjugate,
    Adjoint,
}

impl From<Rep> for RepKind {
    fn from(r: Rep) -> Self {
        match r {
            Rep::Defining => RepKind::Defining,
            Rep::Conjugate => RepKind::Conjugate,
            Rep::Adjoint => RepKind::Adjoint,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Product,
    Coupled,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Markdown => OutputFormat::Markdown,
        }
    }
}

fn run(command: Command) -> liebasis::Result<cli::CommandOutput> {
    match command {
        Command::Counts { n_max, format } => cli::cmd_counts(n_max, format.into()),
        Command::Verify {
            space,
            basis,
            with_exchange,
            tol,
            cluster_tol,
            scalar_tol,
            format,
            cache_dir,
        } => {
            let basis = match basis {
                Basis::Product => BasisKind::Product,
                Basis::Coupled => BasisKind::Coupled,
            };
            let defaults = Tolerances::default();
            let mut config = RunConfig::new(space.n, space.rep1.into(), space.rep2.into(), basis);
            config.with_exchange = with_exchange;
            config.tolerances = Tolerances {
                commute_tol: tol.unwrap_or(defaults.commute_tol),
                cluster_tol: cluster_tol.unwrap_or(defaults.cluster_tol),
                scalar_tol: scalar_tol.unwrap_or(defaults.scalar_tol),
            };
            config.format = format.into();
            config.cache_dir = cache_dir;
            cli::cmd_verify(&config)
        }
        Command::Decompose { space, format } => {
            let mut config = RunConfig::new(space.n, space.rep1.into(), space.rep2.into(), BasisKind::Coupled);
            config.format = format.into();
            cli::cmd_decompose(&config)
        }
    }
}

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(p) => p,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(parsed.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::InvalidConfig(_) | Error::Domain(_) => EXIT_INVALID,
                _ => EXIT_FAILURE,
            };
            ExitCode::from(code as u8)
        }
    }
}
