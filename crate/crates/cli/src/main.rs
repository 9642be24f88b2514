//! `rgm`: LP bounds, ratio simulation and structural verification for
//! randomized greedy matching.

mod bound;
mod golden;
mod simulate;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Environment variable overriding the default output directory.
pub const OUT_DIR_ENV: &str = "RGM_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "rgm", version, about = "Randomized greedy matching workbench: factor-revealing LP bounds, ratio simulation and structural verification.")]
struct Cli {
    /// Worker threads [default: available cores]
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    /// Directory for written artifacts
    #[arg(long, global = true, env = OUT_DIR_ENV, default_value = "rgm-out")]
    out_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build, export, solve and check a factor-revealing LP
    Bound(bound::BoundArgs),
    /// Compute approximation ratios over a graph family and write CSV
    Simulate(simulate::SimulateArgs),
    /// Run the structural property checks and write a JSON report
    Verify(verify::VerifyArgs),
}

/// Outcome classes with their exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Solver(String),
    Mismatch(String),
    Lemma(String),
    Io(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Solver(_) => 3,
            Failure::Mismatch(_) => 4,
            Failure::Lemma(_) => 5,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Solver(m) => write!(f, "solver failure: {m}"),
            Failure::Mismatch(m) => write!(f, "bound mismatch: {m}"),
            Failure::Lemma(m) => write!(f, "property failure: {m}"),
            Failure::Io(e) => write!(f, "error: {e:#}"),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.into())
    }
}

pub type Outcome = Result<(), Failure>;

/// Writes `contents` to `path`, creating parent directories.
pub fn write_file(path: &Path, contents: &[u8]) -> Outcome {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Io(anyhow::Error::new(e).context(format!("creating {}", dir.display()))))?;
    }
    std::fs::write(path, contents).map_err(|e| Failure::Io(anyhow::Error::new(e).context(format!("writing {}", path.display()))))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let jobs = cli.jobs.map_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()), |j| j as usize);
    log::debug!("jobs {jobs}, output directory {}", cli.out_dir.display());
    let result = match cli.command {
        Command::Bound(a) => bound::run(a, &cli.out_dir),
        Command::Simulate(a) => simulate::run(a, &cli.out_dir, jobs),
        Command::Verify(a) => verify::run(a, &cli.out_dir, jobs),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.code())
        }
    }
}
