//! `sact`: command-line workbench for finite monoids and right acts.

/// `print!` that stops quietly when stdout is closed early.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout().lock(), $($arg)*);
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

mod commands;
mod text;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sact_core::Error;

#[derive(Parser)]
#[command(
    name = "sact",
    version,
    about = "Finite monoids, right acts and their lattices"
)]
struct Cli {
    /// Switch stdout payloads to JSON and report errors as JSON on stderr.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum LatticeKind {
    Congruences,
    Subacts,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum DecomposeMode {
    Plain,
    Zero,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum GenKind {
    Monoid,
    Act,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Family {
    MinMonoid,
}

#[derive(Subcommand)]
enum Command {
    /// Load a workspace file and classify every monoid and act in it.
    Validate { file: PathBuf },
    /// Enumerate the congruence or subact lattice of an act.
    Lattice {
        file: PathBuf,
        #[arg(long)]
        act: String,
        #[arg(long, value_enum)]
        kind: LatticeKind,
        /// Write a Hasse diagram in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Cross-check against brute-force enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Quotient an act by a subact (Rees) or a congruence; prints a workspace.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        act: String,
        /// Elements of the subact to collapse, e.g. `0,1`.
        #[arg(
            long,
            required_unless_present = "congruence",
            conflicts_with = "congruence"
        )]
        subact: Option<String>,
        /// Blocks of the congruence, e.g. `0,1|2`.
        #[arg(long)]
        congruence: Option<String>,
        /// Name of the quotient act in the output.
        #[arg(long)]
        name: Option<String>,
    },
    /// Split an act into indecomposable components or zero-glued pieces.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        act: String,
        #[arg(long, value_enum, default_value = "plain")]
        mode: DecomposeMode,
    },
    /// Fitting analysis of an endomorphism, e.g. `--endo 0,0,1`.
    Fitting {
        file: PathBuf,
        #[arg(long)]
        act: String,
        #[arg(long)]
        endo: String,
    },
    /// Rees factors of an ascending chain of subacts, e.g. `--chain "0;0,1;0,1,2"`.
    Series {
        file: PathBuf,
        #[arg(long)]
        act: String,
        #[arg(long)]
        chain: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        instances: usize,
        #[arg(long, default_value_t = 5)]
        max_act: usize,
        #[arg(long, default_value_t = 4)]
        max_monoid: usize,
        /// Re-run the instances stored in a report or instance file.
        #[arg(long)]
        replay: Option<PathBuf>,
        /// Also write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a seeded random monoid or act as a workspace.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        seed: u64,
        /// Transformation degree for monoids, carrier size for acts.
        #[arg(long)]
        size: usize,
        #[arg(long)]
        commutative: bool,
        #[arg(long)]
        with_zero: bool,
        /// Transformation degree of the monoid behind a random act.
        #[arg(long, default_value_t = 3)]
        monoid_degree: usize,
        #[arg(long, default_value_t = 12)]
        max_monoid: usize,
    },
    /// Emit a built-in family member as a workspace.
    Builtin {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
    },
}

/// Why a command stopped.
pub enum Failure {
    /// Bad arguments or names: exit 2.
    Usage(String),
    /// Engine error; the exit code depends on the variant.
    Engine(Error),
    /// The command ran but the verdict is negative: exit 1.
    Rejected(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Rejected(_) => 1,
            Failure::Engine(Error::SizeLimitExceeded(_)) => 3,
            Failure::Engine(Error::UnknownSuite(_)) => 2,
            Failure::Engine(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "Usage",
            Failure::Rejected(_) => "Rejected",
            Failure::Engine(e) => e.kind(),
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Rejected(m) => m.clone(),
            Failure::Engine(e) => e.to_string(),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    match cli.command {
        Command::Validate { file } => commands::validate(&file, json),
        Command::Lattice {
            file,
            act,
            kind,
            dot,
            oracle,
        } => commands::lattice(&file, &act, kind, dot.as_deref(), oracle, json),
        Command::Quotient {
            file,
            act,
            subact,
            congruence,
            name,
        } => commands::quotient(&file, &act, subact.as_deref(), congruence.as_deref(), name),
        Command::Decompose { file, act, mode } => commands::decompose(&file, &act, mode, json),
        Command::Fitting { file, act, endo } => commands::fitting(&file, &act, &endo),
        Command::Series { file, act, chain } => commands::series(&file, &act, &chain, json),
        Command::Verify {
            suite,
            seed,
            instances,
            max_act,
            max_monoid,
            replay,
            out,
        } => {
            let config = sact_core::SuiteConfig {
                seed,
                instances,
                max_act,
                max_monoid,
            };
            commands::verify(&suite, &config, replay.as_deref(), out.as_deref(), json)
        }
        Command::Gen {
            kind,
            seed,
            size,
            commutative,
            with_zero,
            monoid_degree,
            max_monoid,
        } => {
            let config = sact_core::analyze::RandomConfig {
                seed,
                size,
                commutative,
                with_zero,
                monoid_degree,
                max_monoid,
            };
            commands::generate(kind, &config)
        }
        Command::Builtin { family, n } => commands::builtin(family, n),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let code = f.code();
            if json {
                let payload = serde_json::json!({
                    "error": { "kind": f.kind(), "message": f.message(), "exit_code": code }
                });
                eprintln!("{payload}");
            } else {
                eprintln!("error: {}", f.message());
            }
            ExitCode::from(code)
        }
    }
}
