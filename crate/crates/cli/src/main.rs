use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nilquat_cli::{
    cmd_check_aut, cmd_dims, cmd_mc, cmd_verify, parse_m_range, read_file, resolve_seed, CliError, Format, Output,
};

#[derive(Parser)]
#[command(name = "nilquat", version, about = "Exact verification reports for H-type hypercomplex nilmanifolds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Text,
    Json,
}

impl From<Fmt> for Format {
    fn from(f: Fmt) -> Self {
        match f {
            Fmt::Text => Format::Text,
            Fmt::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    All,
    Algebra,
    Hypercomplex,
    Coords,
    Twistor,
    Cohomology,
    Mc,
    Aut,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Algebra => "algebra",
            Suite::Hypercomplex => "hypercomplex",
            Suite::Coords => "coords",
            Suite::Twistor => "twistor",
            Suite::Cohomology => "cohomology",
            Suite::Mc => "mc",
            Suite::Aut => "aut",
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites
    Verify {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, value_enum, default_value = "text")]
        format: Fmt,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Tabulate cohomology dimensions, enumerated against closed forms
    Dims {
        /// `a..b` (inclusive) or a single value
        #[arg(long)]
        m: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Fmt,
    },
    /// Solve the Maurer–Cartan recursion from a first-order parameter
    Mc {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        phi1: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Fmt,
    },
    /// Evaluate the automorphism predicates on a matrix
    CheckAut {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        matrix: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Fmt,
    },
}

fn run(cmd: Cmd) -> Result<Output, CliError> {
    match cmd {
        Cmd::Verify { m, suite, format, seed } => cmd_verify(m, suite.name(), format.into(), resolve_seed(seed)?),
        Cmd::Dims { m, format } => {
            let (a, b) = parse_m_range(&m)?;
            cmd_dims(a, b, format.into())
        }
        Cmd::Mc {
            m,
            order,
            phi1,
            seed,
            format,
        } => {
            let seed = resolve_seed(seed)?;
            cmd_mc(m, order, &read_file(&phi1)?, seed, format.into())
        }
        Cmd::CheckAut { m, matrix, format } => cmd_check_aut(m, &read_file(&matrix)?, format.into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout(), "{}", out.body);
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
