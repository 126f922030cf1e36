//! Amplitude amplification of the models that classify a majority of the
//! training set correctly.

use serde::Serialize;

use qens_core::sim::{grover_accurate_filter, grover_success_probability, CountRegister, RegisterLayout};

use crate::config::GroverConfig;
use crate::error::{usage, Result};
use crate::output::{Check, Outcome, RunContext};

#[derive(Debug, Serialize)]
struct Report<'a> {
    command: &'static str,
    config: &'a GroverConfig,
    models: u64,
    marked: u64,
    marked_fraction: f64,
    qubits: u32,
    /// `⌊(π/4)·√(E/K)⌋`
    default_iterations: u64,
    /// Order-of-magnitude estimate `√(E/K)`.
    rough_iterations: f64,
    iterations: u64,
    marked_probability: f64,
    closed_form_probability: f64,
    checks: &'a [Check],
}

pub fn run(config: &GroverConfig, ctx: &RunContext) -> Result<Outcome> {
    let seed = ctx.seed_or(config.seed);
    let family = config.family.build()?;
    let grid = config.grid.build(&family)?;
    let dataset = config.dataset.build(seed)?;
    let Some(param_qubits) = grid.register_bits() else {
        return usage("the quantum path needs bits_per_parameter, not levels");
    };
    let layout = RegisterLayout::new(param_qubits, CountRegister::for_points(dataset.len()).width)?;
    layout.check_cap(config.qubit_cap)?;

    let out = grover_accurate_filter(&family, &grid, &dataset, config.iterations)?;
    let closed = grover_success_probability(out.iterations, out.marked, out.models);
    let mut outcome = Outcome::new("grover");
    let gap = (out.marked_probability - closed).abs();
    outcome.checks.push(Check::new("matches_closed_form", gap < 1e-10, format!("{gap:e}")));
    outcome.checks.push(Check::new(
        "norm_preserved",
        (out.state.norm_squared() - 1.0).abs() < 1e-12,
        format!("{}", out.state.norm_squared()),
    ));
    let report = Report {
        command: "grover",
        config,
        models: out.models,
        marked: out.marked,
        marked_fraction: out.marked as f64 / out.models as f64,
        qubits: layout.total_qubits(),
        default_iterations: out.default_iterations,
        rough_iterations: (out.models as f64 / out.marked as f64).sqrt(),
        iterations: out.iterations,
        marked_probability: out.marked_probability,
        closed_form_probability: closed,
        checks: &outcome.checks,
    };
    outcome.file(ctx.write_json("grover.json", &report)?);
    Ok(outcome)
}
