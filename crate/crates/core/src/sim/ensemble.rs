use num_complex::Complex64;

use super::state::{EnsembleState, RegisterLayout};
use crate::datagen::CounterRng;
use crate::error::{domain, Error, Result};
use crate::model::{Dataset, Label, ModelFamily, ParameterGrid};
use crate::weighting::grid_predictions;

/// Accepted branches below this probability are treated as empty.
const EMPTY_BRANCH: f64 = 1e-24;

/// Outcome bookkeeping of the accuracy-qubit postselection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PostselectionReport {
    pub acceptance_probability: f64,
    /// Expected number of runs until one is accepted, `1 / p_acc`.
    pub expected_repetitions: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LabelCounts {
    pub minus: u64,
    pub plus: u64,
}

impl LabelCounts {
    pub fn plus_frequency(&self) -> f64 {
        self.plus as f64 / (self.plus + self.minus) as f64
    }
}

fn ry(cos: f64, sin: f64) -> [[Complex64; 2]; 2] {
    let c = Complex64::new(cos, 0.0);
    let s = Complex64::new(sin, 0.0);
    [[c, -s], [s, c]]
}

/// Applies `gate` to the qubit at `bit` inside one parameter block.
fn apply_in_block(block: &mut [Complex64], bit: u32, gate: &[[Complex64; 2]; 2]) {
    let half = 1usize << bit;
    for chunk in block.chunks_mut(2 * half) {
        let (lo, hi) = chunk.split_at_mut(half);
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x, y) = (*a, *b);
            *a = gate[0][0] * x + gate[0][1] * y;
            *b = gate[1][0] * x + gate[1][1] * y;
        }
    }
}

fn check_grid_fits(state: &EnsembleState, grid: &ParameterGrid) -> Result<()> {
    match grid.register_bits() {
        Some(bits) if bits == state.layout().param_qubits() => Ok(()),
        Some(bits) => domain(format!(
            "grid needs {bits} parameter qubits, state has {}",
            state.layout().param_qubits()
        )),
        None => domain(format!("grid with {} levels per parameter is not qubit-addressable", grid.levels())),
    }
}

/// Hadamards on the parameter register: every `|θ⟩|0⟩|0⟩` at amplitude `1/√E`.
pub fn prepare_uniform(layout: RegisterLayout, qubit_cap: u32) -> Result<EnsembleState> {
    let mut state = EnsembleState::zero(layout, qubit_cap)?;
    for j in 0..layout.param_qubits() {
        state.hadamard(state.param_qubit(j));
    }
    Ok(state)
}

/// Rotates the accuracy qubit of every `|θ⟩` by `RY` with `cos = √a_θ`, so
/// an accuracy qubit starting in `|0⟩` ends in `√a_θ|0⟩ + √(1-a_θ)|1⟩`.
pub fn apply_accuracy_rotation_exact(mut state: EnsembleState, accuracies: &[f64]) -> Result<EnsembleState> {
    let layout = state.layout();
    if accuracies.len() != layout.models() {
        return domain(format!("{} accuracies for {} parameter states", accuracies.len(), layout.models()));
    }
    if let Some(bad) = accuracies.iter().find(|a| !(0.0..=1.0).contains(*a)) {
        return domain(format!("accuracy {bad} outside [0, 1]"));
    }
    let bit = layout.accuracy_bit();
    state.for_each_block(|theta, block| {
        let a = accuracies[theta];
        apply_in_block(block, bit, &ry(a.sqrt(), (1.0 - a).sqrt()));
    });
    Ok(state)
}

/// Literal reading of the incremental weighting: Hadamard on the accuracy
/// qubit (angle π/4), then for every training point a `θ`-conditioned
/// rotation by `-Δ` when the model classifies the point correctly and `+Δ`
/// otherwise. Afterwards `P(accuracy = 0 | θ) = cos²(π/4 - (2c_θ - M)Δ)`.
///
/// Loading the point, evaluating the classifier and uncomputing both
/// leave only the conditional rotation behind, so that is all that is
/// applied here.
pub fn apply_accuracy_rotation_sequential(
    mut state: EnsembleState,
    dataset: &Dataset,
    family: &ModelFamily,
    grid: &ParameterGrid,
    delta: f64,
) -> Result<EnsembleState> {
    let m = dataset.len() as f64;
    let max_delta = std::f64::consts::PI / (4.0 * m);
    if !(delta > 0.0 && delta <= max_delta) {
        return domain(format!("rotation step {delta} outside (0, π/(4M)] = (0, {max_delta}]"));
    }
    family.validate()?;
    family.check_dataset(dataset)?;
    check_grid_fits(&state, grid)?;
    if grid.parameter_count() != family.parameter_count() {
        return domain("grid and family disagree on the parameter count");
    }
    let bit = state.layout().accuracy_bit();
    state.hadamard(bit);
    let toward_zero = ry(delta.cos(), -delta.sin());
    let toward_one = ry(delta.cos(), delta.sin());
    let p = grid.parameter_count();
    state.for_each_block(|theta_index, block| {
        let mut theta = vec![0.0; p];
        grid.decode_into(theta_index as u64, &mut theta);
        for point in dataset.points() {
            let correct = family.predict_unchecked(&theta, &point.x) == point.y;
            apply_in_block(block, bit, if correct { &toward_zero } else { &toward_one });
        }
    });
    Ok(state)
}

/// Acceptance weight `cos²(π/4 - (2c - M)Δ)` the sequential rotation gives a
/// model with `c` of `m` points correct.
pub fn sequential_acceptance(correct: u32, m: usize, delta: f64) -> f64 {
    let angle = std::f64::consts::FRAC_PI_4 - (2.0 * correct as f64 - m as f64) * delta;
    angle.cos().powi(2)
}

/// `P(accuracy = 0 | θ)` for every parameter state, read from the amplitudes.
/// Parameter states with no weight report 0.
pub fn accuracy_zero_probabilities(state: &EnsembleState) -> Vec<f64> {
    let bit = state.layout().accuracy_bit();
    state
        .amplitudes()
        .chunks(state.layout().block_len())
        .map(|block| {
            let (mut zero, mut total) = (0.0, 0.0);
            for (i, a) in block.iter().enumerate() {
                let p = a.norm_sqr();
                total += p;
                if i >> bit & 1 == 0 {
                    zero += p;
                }
            }
            if total > 0.0 {
                zero / total
            } else {
                0.0
            }
        })
        .collect()
}

/// Projects the accuracy qubit onto `|0⟩` and renormalizes.
pub fn postselect_accuracy_zero(mut state: EnsembleState) -> Result<(EnsembleState, PostselectionReport)> {
    let bit = state.layout().accuracy_bit();
    let rejected = state.weight_where_set(bit);
    let total = state.norm_squared();
    let accepted = total - rejected;
    if !(accepted > EMPTY_BRANCH) {
        return Err(Error::PostselectionImpossible(accepted.max(0.0)));
    }
    let mask = 1usize << bit;
    for (i, a) in state.amplitudes_mut().iter_mut().enumerate() {
        if i & mask != 0 {
            *a = Complex64::new(0.0, 0.0);
        }
    }
    state.scale(1.0 / accepted.sqrt());
    let acceptance_probability = accepted / total;
    Ok((state, PostselectionReport { acceptance_probability, expected_repetitions: 1.0 / acceptance_probability }))
}

/// The classifier routine: flips the output qubit of `|θ⟩` exactly when
/// `f(x; θ) = +1` (output `|0⟩` encodes -1, `|1⟩` encodes +1).
pub fn apply_classifier(
    mut state: EnsembleState,
    family: &ModelFamily,
    grid: &ParameterGrid,
    x: &[f64],
) -> Result<EnsembleState> {
    check_grid_fits(&state, grid)?;
    let bit = state.layout().output_bit();
    let stray = state.weight_where_set(bit);
    if stray > EMPTY_BRANCH {
        return Err(Error::State(format!("output qubit not cleared (weight {stray:e} on |1⟩)")));
    }
    let predictions = grid_predictions(family, grid, x)?;
    let (o, i) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    let flip = [[o, i], [i, o]];
    state.for_each_block(|theta, block| {
        if predictions[theta] == Label::Plus {
            apply_in_block(block, bit, &flip);
        }
    });
    Ok(state)
}

/// Output-qubit marginal `(p(-1), p(+1))`.
pub fn measure_label_distribution(state: &EnsembleState) -> (f64, f64) {
    let plus = state.weight_where_set(state.layout().output_bit());
    let total = state.norm_squared();
    let p_plus = plus / total;
    (1.0 - p_plus, p_plus)
}

/// `⟨𝟙 ⊗ σ_z⟩` on the output qubit, `p(|0⟩) - p(|1⟩) = p(-1) - p(+1)`.
pub fn expectation_sigma_z(state: &EnsembleState) -> f64 {
    let (minus, plus) = measure_label_distribution(state);
    minus - plus
}

/// Draws `shots` output-qubit measurements. Each shot consumes one uniform
/// variate from a [`CounterRng`] seeded with `seed`.
pub fn sample_measurements(state: &EnsembleState, shots: u64, seed: u64) -> Result<LabelCounts> {
    if shots == 0 {
        return domain("at least one shot is required");
    }
    let (_, p_plus) = measure_label_distribution(state);
    let rng = CounterRng::new(seed);
    let plus = (0..shots).filter(|&n| rng.uniform_at(n) < p_plus).count() as u64;
    Ok(LabelCounts { minus: shots - plus, plus })
}
