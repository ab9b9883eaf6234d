mod commands;
mod report;
mod scene;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exit codes: 0 all checks pass, 1 check failure, 2 usage/input error,
/// 3 I/O error.
#[derive(Parser)]
#[command(name = "mink-rep", version, about = "Space-like surfaces in R^4: measures, inner products, and verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the spans of every term of a named state.
    Classify {
        /// State name in the scene file.
        name: String,
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Integrate a surface measure over a named state.
    Measure {
        /// State name in the scene file.
        name: String,
        /// Which measure to integrate.
        kind: MeasureKind,
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        json: bool,
        /// Quadrature self-check tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Inner products (both definitions) of two named states.
    Inner {
        name1: String,
        name2: String,
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Apply a named transform to a named state and write the result as a
    /// scene fragment.
    Act {
        transform: String,
        state: String,
        out: PathBuf,
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite with a deterministic seed.
    Verify {
        suite: Suite,
        #[arg(long)]
        scene: Option<PathBuf>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        json: bool,
        /// Override the per-suite tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MeasureKind {
    /// Euclidean area.
    Area,
    /// Lorentz-invariant area.
    Mink,
    /// Signed invariant measure (complex).
    Signed,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    Invariance,
    Unitarity,
    Grouplaw,
    Orthogonality,
    Identity,
    All,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Classify { name, scene, json } => commands::classify(&scene, &name, json),
        Command::Measure {
            name,
            kind,
            scene,
            json,
            tol,
        } => commands::measure(&scene, &name, kind, json, tol),
        Command::Inner {
            name1,
            name2,
            scene,
            json,
        } => commands::inner(&scene, &name1, &name2, json),
        Command::Act {
            transform,
            state,
            out,
            scene,
            json,
        } => commands::act(&scene, &transform, &state, &out, json),
        Command::Verify {
            suite,
            scene,
            seed,
            trials,
            json,
            tol,
        } => commands::verify(scene.as_deref(), suite, seed, trials, json, tol),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
