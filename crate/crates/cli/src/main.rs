//! `dgq`: build DG quiver models and check them from the command line.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails
//! (the report carries a witness), 2 on invalid input, 3 when a path
//! enumeration exceeds the cap set by `DGQ_PATH_CAP`.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "dgq", version, about = "Exact computations with DG path algebras")]
pub struct Cli {
    /// Worker threads for the parallel parts (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format (default: json, or table for `cohomology`).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    /// d² = 0 on every arrow.
    Dsq,
    /// Degrees, endpoints and minimality of d.
    Grading,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimal model of k[x_1..x_n].
    ModelPoly {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        verify: Vec<Check>,
        /// Write the verification reports here (JSON).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// McKay-quiver model of k[x_1..x_n] # Z/m.
    ModelMckay {
        #[arg(long)]
        m: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u32>,
        /// Quotient by the idempotent of vertex 0.
        #[arg(long)]
        delete_zero: bool,
        #[arg(long, value_delimiter = ',')]
        verify: Vec<Check>,
        /// Treat hypothesis warnings as errors.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Ginzburg DG algebra of a quiver with potential.
    Ginzburg {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        potential: PathBuf,
        /// Restrict the quiver and potential away from this vertex first.
        #[arg(long)]
        delete_vertex: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        verify: Vec<Check>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Cohomology dimensions in a window of bidegrees.
    Cohomology {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        hmin: i32,
        #[arg(long)]
        adams_max: u32,
    },
    /// Compare H⁰ of a model with a presented algebra.
    CompareH0 {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        presentation: PathBuf,
        /// JSON object from model arrow ids to presentation arrow ids
        /// (default: identity on ids).
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        adams_max: u32,
    },
    /// Split, C and ω checks for a McKay model with weights summing to m.
    CyCheck {
        #[arg(long)]
        m: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u32>,
        #[arg(long, default_value_t = 5)]
        adams_max: u32,
    },
    /// Run checks on a model file.
    Verify {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "dsq,grading")]
        checks: Vec<Check>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
