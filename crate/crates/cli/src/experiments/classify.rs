//! End-to-end run of the quantum ensemble next to the classical oracle.

use serde::Serialize;

use qens_core::datagen::mix64;
use qens_core::sim::{
    accuracy_zero_probabilities, apply_accuracy_rotation_exact, apply_accuracy_rotation_sequential, apply_classifier,
    expectation_sigma_z, measure_label_distribution, postselect_accuracy_zero, prepare_uniform, sample_measurements,
    sequential_acceptance, RegisterLayout,
};
use qens_core::weighting::{grid_accuracies, grid_correct_counts, EnsembleOracle, WeightScheme, Weighting};

use crate::config::{ClassifyConfig, RotationSpec};
use crate::error::{usage, Result};
use crate::output::{Check, Outcome, RunContext};

#[derive(Debug, Serialize)]
struct Distribution {
    p_minus: f64,
    p_plus: f64,
}

#[derive(Debug, Serialize)]
struct QueryReport {
    x: Vec<f64>,
    quantum: Distribution,
    /// `p(0) - p(1)` on the output qubit.
    sigma_z: f64,
    /// `(1/Eχ) Σ a_θ (f+1)/2`, which equals `p(+1)`.
    sigma_z_alternative: f64,
    classical_accuracy: Distribution,
    classical_scheme: Distribution,
    classical_scheme_raw_score: f64,
    classical_scheme_label: i8,
    deviation: f64,
    shots_minus: u64,
    shots_plus: u64,
    shot_frequency_plus: f64,
}

#[derive(Debug, Serialize)]
struct Report<'a> {
    command: &'static str,
    config: &'a ClassifyConfig,
    seed: u64,
    models: u64,
    dataset_size: usize,
    qubits: u32,
    rotation: &'static str,
    delta: Option<f64>,
    mean_accuracy: f64,
    acceptance_probability: f64,
    expected_repetitions: f64,
    /// `max_θ |P(accuracy = 0 | θ) - a_θ|` before postselection.
    max_weight_deviation: f64,
    max_deviation: f64,
    queries: Vec<QueryReport>,
    checks: &'a [Check],
}

pub fn run(config: &ClassifyConfig, ctx: &RunContext) -> Result<Outcome> {
    if config.shots == 0 {
        return usage("shots must be at least 1");
    }
    if config.queries.is_empty() {
        return usage("at least one query point is required");
    }
    let seed = ctx.seed_or(config.seed);
    let family = config.family.build()?;
    let grid = config.grid.build(&family)?;
    let dataset = config.dataset.build(seed)?;
    let Some(param_qubits) = grid.register_bits() else {
        return usage("the quantum path needs bits_per_parameter, not levels");
    };
    let layout = RegisterLayout::new(param_qubits, 0)?;
    layout.check_cap(config.qubit_cap)?;
    for q in &config.queries {
        if q.len() != family.input_dim() {
            return usage(format!("query {q:?} has {} coordinates, the family takes {}", q.len(), family.input_dim()));
        }
    }

    let accuracies = grid_accuracies(&family, &grid, &dataset)?;
    let mean_accuracy = accuracies.iter().sum::<f64>() / accuracies.len() as f64;
    let state = prepare_uniform(layout, config.qubit_cap)?;
    let (state, rotation, delta) = match config.rotation {
        RotationSpec::Exact => (apply_accuracy_rotation_exact(state, &accuracies)?, "exact", None),
        RotationSpec::Sequential { delta } => {
            let delta = delta.unwrap_or(std::f64::consts::PI / (4.0 * dataset.len() as f64));
            (apply_accuracy_rotation_sequential(state, &dataset, &family, &grid, delta)?, "sequential", Some(delta))
        }
    };
    let zero_probabilities = accuracy_zero_probabilities(&state);
    let max_weight_deviation =
        zero_probabilities.iter().zip(&accuracies).map(|(p, a)| (p - a).abs()).fold(0.0, f64::max);
    // sequential rotations approximate the accuracy; compare against their own closed form instead
    let sequential_gap = match delta {
        Some(delta) => {
            let m = dataset.len();
            let counts = grid_correct_counts(&family, &grid, &dataset)?;
            Some(
                zero_probabilities
                    .iter()
                    .zip(&counts)
                    .map(|(p, &c)| (p - sequential_acceptance(c, m, delta)).abs())
                    .fold(0.0, f64::max),
            )
        }
        None => None,
    };
    let (state, post) = postselect_accuracy_zero(state)?;

    let accuracy_oracle = EnsembleOracle::new(&family, &grid, &dataset, Weighting::new(WeightScheme::Accuracy))?;
    let scheme_oracle = EnsembleOracle::new(&family, &grid, &dataset, Weighting::new(config.scheme.into()))?;
    let mut queries = Vec::with_capacity(config.queries.len());
    for (q, x) in config.queries.iter().enumerate() {
        let measured = apply_classifier(state.clone(), &family, &grid, x)?;
        let (p_minus, p_plus) = measure_label_distribution(&measured);
        let classical = accuracy_oracle.decide(x)?;
        let scheme = scheme_oracle.decide(x)?;
        let shots = sample_measurements(&measured, config.shots, mix64(seed ^ mix64(q as u64)))?;
        queries.push(QueryReport {
            x: x.clone(),
            quantum: Distribution { p_minus, p_plus },
            sigma_z: expectation_sigma_z(&measured),
            sigma_z_alternative: p_plus,
            classical_accuracy: Distribution { p_minus: classical.p_minus, p_plus: classical.p_plus },
            classical_scheme: Distribution { p_minus: scheme.p_minus, p_plus: scheme.p_plus },
            classical_scheme_raw_score: scheme.raw_score,
            classical_scheme_label: scheme.label.as_i8(),
            deviation: (p_plus - classical.p_plus).abs().max((p_minus - classical.p_minus).abs()),
            shots_minus: shots.minus,
            shots_plus: shots.plus,
            shot_frequency_plus: shots.plus_frequency(),
        });
    }
    let max_deviation = queries.iter().map(|q| q.deviation).fold(0.0, f64::max);

    let mut outcome = Outcome::new("classify");
    if matches!(config.rotation, RotationSpec::Exact) {
        outcome.checks.push(Check::new(
            "quantum_matches_classical",
            max_deviation < 1e-10,
            format!("max deviation {max_deviation:e}"),
        ));
        let gap = (post.acceptance_probability - mean_accuracy).abs();
        outcome.checks.push(Check::new("acceptance_is_mean_accuracy", gap < 1e-12, format!("{gap:e}")));
    }
    if let Some(gap) = sequential_gap {
        outcome.checks.push(Check::new("sequential_matches_closed_form", gap < 1e-12, format!("max gap {gap:e}")));
    }
    let report = Report {
        command: "classify",
        config,
        seed,
        models: grid.size(),
        dataset_size: dataset.len(),
        qubits: layout.total_qubits(),
        rotation,
        delta,
        mean_accuracy,
        acceptance_probability: post.acceptance_probability,
        expected_repetitions: post.expected_repetitions,
        max_weight_deviation,
        max_deviation,
        queries,
        checks: &outcome.checks,
    };
    outcome.file(ctx.write_json("classify.json", &report)?);
    Ok(outcome)
}
