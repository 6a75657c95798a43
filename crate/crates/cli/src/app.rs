//! Command-line front end. Reports go to standard output; errors go to
//! standard error as `{"error", "message"}` with exit code 1 for domain
//! errors and 2 for usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use upcluster_core::Seed;

use crate::commands::{self, Report};
use crate::error::{CliError, CliResult, ErrorClass};
use crate::schema::{parse_field, SeedJson};
use crate::server;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "upcluster", version, about = "Upper cluster algebras: mutation, class groups and factorization")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,

    /// Coefficient ring: Z, Q or Q(zeta,N).
    #[arg(long, global = true, default_value = "Q")]
    pub field: String,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct SeedArg {
    /// Seed document (JSON).
    #[arg(long)]
    pub seed: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mutate along a path and print the resulting seed.
    Mutate {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, value_delimiter = ',', required = true)]
        path: Vec<usize>,
    },
    /// Exchange polynomials with their irreducible factor counts.
    ExchangePolys {
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Presentation of the divisor class group.
    ClassGroup {
        #[command(flatten)]
        seed: SeedArg,
        /// Assume the starfish lemma holds even without full rank.
        #[arg(long)]
        assert_starfish: bool,
    },
    /// Whether the upper cluster algebra is factorial.
    IsUfd {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        assert_starfish: bool,
    },
    /// Breadth-first enumeration of the mutation class.
    Explore {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 20_000)]
        max_seeds: usize,
        #[arg(long, default_value_t = 32)]
        max_depth: usize,
    },
    /// Membership in the star intersection, optionally along a path.
    Member {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        element: String,
        #[arg(long, value_delimiter = ',')]
        path: Option<Vec<usize>>,
    },
    /// Valuation pairing `(x_i | u)`.
    Pairing {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        var: usize,
        #[arg(long)]
        element: String,
    },
    /// Splits off the largest cluster monomial dividing an element.
    LocalFactor {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        element: String,
    },
    /// Checks that every cluster variable within a depth is Laurent.
    LaurentCheck {
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Runs the HTTP service on 127.0.0.1.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

fn load(arg: &SeedArg) -> CliResult<SeedJson> {
    let text = std::fs::read_to_string(&arg.seed)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", arg.seed.display())))?;
    SeedJson::parse(&text)
}

fn current(arg: &SeedArg) -> CliResult<Seed> {
    load(arg)?.to_seed()
}

fn render<R: Report>(report: R, format: Format) -> CliResult<String> {
    Ok(match format {
        Format::Json => serde_json::to_string(&report).expect("reports serialize") + "\n",
        Format::Text => report.text(),
    })
}

/// Runs a parsed command and returns what it prints.
pub fn execute(cli: &Cli) -> CliResult<String> {
    let field = || parse_field(&cli.field);
    let format = cli.format;
    match &cli.command {
        Command::Mutate { seed, path } => render(commands::mutate(&load(seed)?, path)?, format),
        Command::ExchangePolys { seed } => render(commands::exchange_polys(&current(seed)?, &field()?)?, format),
        Command::ClassGroup { seed, assert_starfish } => render(
            commands::class_group_report(&current(seed)?, &field()?, *assert_starfish)?,
            format,
        ),
        Command::IsUfd { seed, assert_starfish } => {
            render(commands::ufd_report(&current(seed)?, &field()?, *assert_starfish)?, format)
        }
        Command::Explore {
            seed,
            max_seeds,
            max_depth,
        } => render(commands::explore_report(&current(seed)?, *max_seeds, *max_depth)?, format),
        Command::Member { seed, element, path } => {
            render(commands::member(&current(seed)?, element, path.as_deref())?, format)
        }
        Command::Pairing { seed, var, element } => render(commands::pairing(&current(seed)?, *var, element)?, format),
        Command::LocalFactor { seed, element } => render(commands::local_factor(&current(seed)?, element)?, format),
        Command::LaurentCheck { seed, depth } => render(commands::laurent_check(&current(seed)?, *depth)?, format),
        Command::Serve { port } => {
            let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::Io(e.to_string()))?;
            runtime.block_on(server::serve(*port))?;
            Ok(String::new())
        }
    }
}

pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let body = serde_json::json!({ "error": "usage", "message": e.to_string() });
            eprintln!("{body}");
            return ExitCode::from(2);
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", serde_json::to_string(&e.body()).expect("error bodies serialize"));
            match e.class() {
                ErrorClass::Usage => ExitCode::from(2),
                ErrorClass::Domain => ExitCode::from(1),
            }
        }
    }
}
