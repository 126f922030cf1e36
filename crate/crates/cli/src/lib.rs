//! Experiment harness: one command per figure plus end-to-end
//! classification and amplitude-amplification runs. Every command is
//! deterministic given its config and seed, independent of thread count.

// NaN-rejecting `!(x > 0.0)` guards are intentional.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
mod error;
pub mod experiments;
pub mod output;
pub mod svg;

use std::path::Path;

pub use error::{exit, CliError, Result};
pub use output::{Check, Outcome, RunContext};

/// Commands accepted by the `qens` binary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Fig2,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Classify,
    Grover,
}

impl Command {
    pub const ALL: [Command; 7] =
        [Command::Fig2, Command::Fig4, Command::Fig5, Command::Fig6, Command::Fig7, Command::Classify, Command::Grover];

    pub fn name(self) -> &'static str {
        match self {
            Command::Fig2 => "fig2",
            Command::Fig4 => "fig4",
            Command::Fig5 => "fig5",
            Command::Fig6 => "fig6",
            Command::Fig7 => "fig7",
            Command::Classify => "classify",
            Command::Grover => "grover",
        }
    }
}

/// Loads the command's config (defaults when `config` is `None`) and runs it.
pub fn run(command: Command, config: Option<&Path>, ctx: &RunContext) -> Result<Outcome> {
    use experiments::*;
    match command {
        Command::Fig2 => fig2::run(&config::load(config)?, ctx),
        Command::Fig4 => fig4::run(&config::load(config)?, ctx),
        Command::Fig5 => fig5::run(&config::load(config)?, ctx),
        Command::Fig6 => fig6::run(&config::load(config)?, ctx),
        Command::Fig7 => fig7::run(&config::load(config)?, ctx),
        Command::Classify => classify::run(&config::load(config)?, ctx),
        Command::Grover => grover::run(&config::load(config)?, ctx),
    }
}
