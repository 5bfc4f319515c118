use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

mod commands;

use commands::CliError;

#[derive(Parser)]
#[command(
    name = "tamari",
    version,
    about = "Torsion classes of A_n and the Tamari lattice"
)]
struct Cli {
    /// Rank of the quiver A_n.
    #[arg(short = 'n', global = true, value_parser = clap::value_parser!(u32).range(1..))]
    n: Option<u32>,

    /// Field modulus for the matrix checks.
    #[arg(long, global = true, default_value_t = 2, value_parser = parse_prime)]
    prime: u32,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output here instead of standard output.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,

    /// Worker threads for the brute-force parts.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,

    /// For `tilting`: emit the order on tilting objects instead of a list.
    #[arg(long, global = true)]
    poset: bool,

    /// Raise the built-in size bounds to this rank.
    #[arg(long = "unsafe-n", global = true)]
    unsafe_n: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Plain,
}

#[derive(Subcommand)]
enum Command {
    /// List all bracket vectors (torsion classes) of rank n.
    Enumerate,
    /// Emit the Tamari lattice of rank n.
    Hasse,
    /// Balanced bracket string to bracket vector.
    Encode {
        input: String,
    },
    /// Bracket vector (comma-separated) to balanced bracket string.
    Decode {
        input: String,
    },
    Meet {
        a: String,
        b: String,
    },
    Join {
        a: String,
        b: String,
    },
    /// Run every oracle suite, or check a stored representation.
    Verify {
        /// JSON file holding a matrix representation.
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// List tilting objects with the torsion classes they generate.
    Tilting,
}

fn parse_prime(s: &str) -> Result<u32, String> {
    let p: u32 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if tamari_core::SUPPORTED_PRIMES.contains(&p) {
        Ok(p)
    } else {
        Err(format!("prime must be one of 2, 3, 5, 7, got {p}"))
    }
}

pub struct Config {
    pub n: Option<usize>,
    pub prime: u32,
    pub format: Option<Format>,
    pub jobs: usize,
    pub poset: bool,
    pub unsafe_n: Option<usize>,
}

impl Config {
    pub fn require_n(&self) -> Result<usize, CliError> {
        self.n
            .ok_or_else(|| CliError::Usage("this command needs -n <rank>".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = Config {
        n: cli.n.map(|n| n as usize),
        prime: cli.prime,
        format: cli.format,
        jobs: cli.jobs as usize,
        poset: cli.poset,
        unsafe_n: cli.unsafe_n,
    };
    let result = match &cli.command {
        Command::Enumerate => commands::enumerate(&config),
        Command::Hasse => commands::hasse(&config),
        Command::Encode { input } => commands::encode(&config, input),
        Command::Decode { input } => commands::decode(&config, input),
        Command::Meet { a, b } => commands::meet(&config, a, b),
        Command::Join { a, b } => commands::join(&config, a, b),
        Command::Verify { rep } => commands::verify(&config, rep.as_deref()),
        Command::Tilting => commands::tilting(&config),
    };
    let (text, failed) = match result {
        Ok(out) => (out.text, out.failed),
        Err(CliError::Usage(msg)) => {
            Cli::command()
                .error(clap::error::ErrorKind::InvalidValue, msg)
                .exit();
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
