//! Command-line front end for `multidisc`.
//!
//! Exit codes: 0 on success, 1 when a checked property fails, 2 on malformed
//! input. Results go to stdout and diagnostics to stderr.

pub mod commands;
pub mod report;
pub mod system_file;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use report::{Format, Report};
pub use system_file::{System, SystemFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "multidisc",
    version,
    about = "Exact discriminants of bilinear and sparse trilinear systems"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    X,
    Y,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Discriminant of a system file by every available formula.
    Disc {
        /// System file (JSON).
        #[arg(long)]
        input: PathBuf,
    },
    /// The determinantal matrix (three-player) or a derivative matrix (bilinear).
    Matrix {
        /// System file (JSON).
        #[arg(long)]
        input: PathBuf,
        /// Derivative group for bilinear systems.
        #[arg(long, value_enum, default_value_t = GroupArg::X)]
        group: GroupArg,
    },
    /// Degree bounds of the discriminant for P^n x P^m.
    Bound {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    /// Generic number of solutions C(n+m, n).
    Count {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    /// Discriminant through elimination to a binary form.
    Oracle {
        /// System file (JSON).
        #[arg(long)]
        input: PathBuf,
    },
    /// Writes a three-player system with a prescribed multiple root.
    SingularGen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Multiple root as "x1:x0,y1:y0,z1:z0"; random if omitted.
        #[arg(long)]
        root: Option<String>,
        /// Multiplier as "l1,l2,l3"; random if omitted.
        #[arg(long)]
        lambda: Option<String>,
        /// Output path; the system is printed if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expresses the n = m = 1 discriminant in the product of the minor ideals.
    Certificate,
    /// Runs the property suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

/// Failure of a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed or unsupported input.
    Input(String),
    /// A checked property did not hold; the report is still printed.
    Property(Box<Report>, String),
}

impl CliError {
    pub fn input(e: impl ToString) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{}", rendered.ansi());
            }
            return if code == 0 { EXIT_OK } else { EXIT_INPUT };
        }
    };
    let format = cli.format;
    match commands::execute(cli.command) {
        Ok(report) => {
            let _ = write!(out, "{}", report.render(format));
            EXIT_OK
        }
        Err(CliError::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(CliError::Property(report, msg)) => {
            let _ = write!(out, "{}", report.render(format));
            let _ = writeln!(err, "property failure: {msg}");
            EXIT_PROPERTY
        }
    }
}
