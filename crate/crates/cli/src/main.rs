mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Parity, smoothing and sliceness tools for free knots given as Gauss codes.
///
/// CODE arguments are Gauss codes such as "1 2 1 2" or "1 2 / 1 2".
/// A CODE of the form @PATH reads diagrams from a file, one per line,
/// ignoring blank lines and everything after '#'.
#[derive(Debug, Parser)]
#[command(name = "fkt", version, propagate_version = true)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a code and print its canonical form.
    Parse { code: String },
    /// Parity of every crossing.
    Parity { code: String },
    /// The parity projection tower with crossing orders.
    Tower { code: String },
    /// Smooth one crossing.
    Smooth {
        code: String,
        #[arg(long)]
        crossing: String,
        #[arg(long, value_parser = ["split", "reverse"])]
        choice: String,
    },
    /// Search for an elementary slice certificate.
    Slice {
        code: String,
        /// Allow a chord to be matched with itself.
        #[arg(long)]
        allow_self_pairs: bool,
    },
    /// Spanning complexes stored as JSON files.
    #[command(subcommand)]
    Complex(ComplexCommand),
    /// Surface diagrams on a cylinder.
    #[command(subcommand)]
    Cylinder(CylinderCommand),
    /// Census of diagrams up to a number of chords.
    Enumerate {
        /// Largest chord count; defaults to FKT_MAX_CHORDS or 6.
        #[arg(long)]
        max_chords: Option<usize>,
        #[arg(long, default_value_t = 1)]
        components: usize,
        /// Break the census down by chord count.
        #[arg(long)]
        stats: bool,
    },
    /// Close a set of facts under the known theorems.
    Deduce {
        #[arg(long)]
        facts: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum ComplexCommand {
    /// Check a complex file and report its class, genus and parity constraints.
    Validate { file: PathBuf },
    /// Smooth an interior double line.
    Smooth {
        file: PathBuf,
        #[arg(long)]
        line: u32,
        #[arg(long, value_parser = ["a", "b"])]
        choice: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Glue a complex to its mirror copy along the boundary.
    Double {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum CylinderCommand {
    /// Check normality and meridian parity.
    Check {
        file: PathBuf,
        /// Also report both readings of the first condition.
        #[arg(long)]
        verbose: bool,
    },
}

fn run(cli: Cli) -> Result<report::Report, Failure> {
    use commands as c;
    match cli.command {
        Command::Parse { code } => c::parse(&code),
        Command::Parity { code } => c::parity(&code),
        Command::Tower { code } => c::tower(&code),
        Command::Smooth { code, crossing, choice } => c::smooth(&code, &crossing, &choice),
        Command::Slice { code, allow_self_pairs } => c::slice(&code, allow_self_pairs),
        Command::Complex(ComplexCommand::Validate { file }) => c::complex_validate(&file),
        Command::Complex(ComplexCommand::Smooth { file, line, choice, out }) => {
            c::complex_smooth(&file, line, &choice, out.as_deref())
        }
        Command::Complex(ComplexCommand::Double { file, out }) => c::complex_double(&file, out.as_deref()),
        Command::Cylinder(CylinderCommand::Check { file, verbose }) => c::cylinder_check(&file, verbose),
        Command::Enumerate { max_chords, components, stats } => c::enumerate(max_chords, components, stats),
        Command::Deduce { facts } => c::deduce(&facts),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(r) => {
            print!("{}", r.render(format));
            ExitCode::from(r.status)
        }
        Err(f) => {
            eprintln!("fkt: {}", f.message());
            if format == Format::Json {
                print!("{}", f.render());
            }
            ExitCode::from(f.status())
        }
    }
}
