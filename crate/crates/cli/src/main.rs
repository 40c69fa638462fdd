use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

/// Winner determination, manipulation search and reduction tooling for
/// same-system runoff elections under scoring protocols.
#[derive(Parser)]
#[command(name = "runoff", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print initial winners, whether a runoff is held, and overall winners.
    Winners {
        election: PathBuf,
        #[arg(long)]
        protocol: String,
        #[arg(long, default_value = "runoff")]
        mode: String,
        /// A unique initial winner still faces a one-candidate runoff.
        #[arg(long)]
        nw_semantics: bool,
    },
    /// Decide whether manipulators can make the target an overall winner.
    Manipulate {
        /// Nonmanipulator votes.
        election: PathBuf,
        #[arg(long)]
        protocol: String,
        #[arg(long, default_value = "runoff")]
        mode: String,
        /// `count=K` for K unit-weight manipulators or `weights=w1,w2,...`.
        #[arg(long)]
        manipulators: String,
        #[arg(long, default_value = "auto")]
        strategy: String,
        /// Write the certificate here on YES.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long, default_value = "p")]
        target: String,
        /// Maximum plan evaluations before answering UNKNOWN.
        #[arg(long)]
        budget: Option<u64>,
        /// Search on one thread.
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        nw_semantics: bool,
    },
    /// Build the manipulation instance for an X3C file.
    Gen {
        x3c: PathBuf,
        #[arg(long, value_enum)]
        construction: Construction,
        /// Output election file; stdout if absent.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        /// Also write the prescribed certificate if the oracle finds a cover.
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
        #[arg(long, default_value = "runoff")]
        mode: String,
    },
    /// Print a lexicographically first exact cover (1-based) or NONE.
    Oracle { x3c: PathBuf },
    /// Check a certificate: VALID-SUCCESS, VALID-FAIL or MALFORMED.
    Verify {
        election: PathBuf,
        certificate: PathBuf,
        /// Defaults to the certificate's protocol.
        #[arg(long)]
        protocol: Option<String>,
        /// Defaults to the certificate's mode.
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        nw_semantics: bool,
    },
    /// Run a reproduction suite and print its results.
    Repro {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 20_100_605)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Veto,
    Halfapproval,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Counterexample,
    VetoSweep,
    HalfapprovalForward,
    Plurality,
    Bucket,
    Greedy,
    Semantics,
    All,
}

/// A failure with its exit code; the message goes to stderr.
struct Failure {
    code: u8,
    message: String,
}

type CmdResult = Result<u8, Failure>;

fn parse_error(message: impl ToString) -> Failure {
    Failure { code: 2, message: message.to_string() }
}

fn semantic_error(message: impl ToString) -> Failure {
    Failure { code: 3, message: message.to_string() }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| parse_error(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure { code: 3, message: format!("{}: {e}", path.display()) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Winners { election, protocol, mode, nw_semantics } => {
            commands::winners(&election, &protocol, &mode, nw_semantics)
        }
        Command::Manipulate {
            election,
            protocol,
            mode,
            manipulators,
            strategy,
            certificate,
            target,
            budget,
            sequential,
            nw_semantics,
        } => commands::manipulate(commands::ManipulateArgs {
            election: &election,
            protocol: &protocol,
            mode: &mode,
            manipulators: &manipulators,
            strategy: &strategy,
            certificate: certificate.as_deref(),
            target: &target,
            budget,
            sequential,
            nw_semantics,
        }),
        Command::Gen { x3c, construction, output, emit_certificate, mode } => commands::gen(
            &x3c,
            matches!(construction, Construction::Halfapproval),
            output.as_deref(),
            emit_certificate.as_deref(),
            &mode,
        ),
        Command::Oracle { x3c } => commands::oracle(&x3c),
        Command::Verify { election, certificate, protocol, mode, nw_semantics } => {
            commands::verify(&election, &certificate, protocol.as_deref(), mode.as_deref(), nw_semantics)
        }
        Command::Repro { suite, seed } => commands::repro(suite, seed),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
