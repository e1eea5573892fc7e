use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use plumbing_cli::commands::{self, Check, Outcome, ReduceOptions};
use plumbing_core::analysis::GsMode;
use plumbing_core::reduction::ReductionMode;

/// Reductions and invariants of plumbing graphs.
#[derive(Parser)]
#[command(name = "plumb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a graph to contact or topological normal form.
    Reduce {
        /// Input file, `-` for stdin.
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Contact)]
        mode: Mode,
        /// Maximum number of primitive moves.
        #[arg(long)]
        fuel: Option<u64>,
        /// Print one line per primitive move.
        #[arg(long)]
        trace: bool,
        /// Write the result as Graphviz instead of the text format.
        #[arg(long)]
        dot: bool,
    },
    /// Run one of the feasibility or pattern checks.
    Check {
        input: PathBuf,
        #[command(flatten)]
        which: CheckArgs,
        /// Fuel for each reduction behind --obstructed.
        #[arg(long)]
        fuel: Option<u64>,
    },
    /// Boundary homology, intersection form and lens spaces of standalone chains.
    Invariants { input: PathBuf },
    /// Decide whether two graphs are isomorphic.
    Iso { first: PathBuf, second: PathBuf },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CheckArgs {
    /// Sign of the GS solution to look for.
    #[arg(long, value_enum)]
    gs: Option<Sign>,
    /// Compare the contact and topological normal forms.
    #[arg(long)]
    obstructed: bool,
    #[arg(long)]
    klein: bool,
    #[arg(long)]
    torsion: bool,
    #[arg(long)]
    star: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Contact,
    Topological,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sign {
    Positive,
    Negative,
}

fn read_input(path: &Path) -> Result<String, Outcome> {
    let res = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        fs::read_to_string(path)
    };
    res.map_err(|e| Outcome::input_error("io", format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<Outcome, Outcome> {
    Ok(match cli.command {
        Command::Reduce {
            input,
            mode,
            fuel,
            trace,
            dot,
        } => {
            let mode = match mode {
                Mode::Contact => ReductionMode::Contact,
                Mode::Topological => ReductionMode::Topological,
            };
            commands::reduce(&read_input(&input)?, mode, ReduceOptions { fuel, trace, dot })
        }
        Command::Check { input, which, fuel } => {
            let what = match which.gs {
                Some(Sign::Positive) => Check::Gs(GsMode::Positive),
                Some(Sign::Negative) => Check::Gs(GsMode::Negative),
                None if which.obstructed => Check::Obstructed,
                None if which.klein => Check::Klein,
                None if which.torsion => Check::Torsion,
                None => Check::Star,
            };
            commands::check(&read_input(&input)?, what, fuel)
        }
        Command::Invariants { input } => commands::invariants(&read_input(&input)?),
        Command::Iso { first, second } => commands::iso(&read_input(&first)?, &read_input(&second)?),
    })
}

fn main() -> ExitCode {
    let out = run(Cli::parse()).unwrap_or_else(|e| e);
    let _ = io::stdout().write_all(out.stdout.as_bytes());
    let _ = io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
