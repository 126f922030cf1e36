use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qens_cli::{exit, run, Command, RunContext};

/// Accuracy-weighted quantum ensemble experiments.
///
/// Exit codes: 0 all checks passed, 1 a consistency check failed,
/// 2 usage or invalid config values, 3 unreadable config or data file,
/// 4 resource cap exceeded, 5 numerical or domain error.
#[derive(Debug, Parser)]
#[command(name = "qens", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// JSON config for the command; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the seed in the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, env = "QENS_OUT", default_value = "qens-out")]
    out: PathBuf,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Skip the SVG renderings.
    #[arg(long, global = true)]
    no_svg: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Cmd {
    /// Condorcet error curves and odds ratios.
    Fig2,
    /// Centered and log-odds weight transformations.
    Fig4,
    /// Continuum expectation curve and decision boundary.
    Fig5,
    /// Perceptron-ensemble decision regions on two blobs.
    Fig6,
    /// Integrand decomposition at a fixed query point.
    Fig7,
    /// Quantum pipeline against the classical oracle.
    Classify,
    /// Amplitude amplification of accurate models.
    Grover,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Fig2 => Command::Fig2,
            Cmd::Fig4 => Command::Fig4,
            Cmd::Fig5 => Command::Fig5,
            Cmd::Fig6 => Command::Fig6,
            Cmd::Fig7 => Command::Fig7,
            Cmd::Classify => Command::Classify,
            Cmd::Grover => Command::Grover,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(exit::USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot build thread pool: {e}");
            return ExitCode::from(exit::RESOURCE);
        }
    }
    let ctx = RunContext { out_dir: cli.out.clone(), seed: cli.seed, svg: !cli.no_svg };
    let command = Command::from(cli.command);
    match run(command, cli.config.as_deref(), &ctx) {
        Ok(outcome) => {
            for check in &outcome.checks {
                let status = if check.passed { "PASS" } else { "FAIL" };
                println!("{status} {} {}: {}", outcome.command, check.name, check.detail);
            }
            for file in &outcome.files {
                println!("wrote {}", cli.out.join(file).display());
            }
            ExitCode::from(if outcome.passed() { exit::OK } else { exit::CHECK_FAILED })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
