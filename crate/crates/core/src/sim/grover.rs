use num_complex::Complex64;

use super::ensemble::prepare_uniform;
use super::state::{EnsembleState, RegisterLayout, DEFAULT_QUBIT_CAP};
use crate::error::{domain, Error, Result};
use crate::model::{Dataset, ModelFamily, ParameterGrid};
use crate::weighting::grid_correct_counts;

/// Correct-classification counter held in the lowest `k = ⌈log2(M+1)⌉` qubits.
///
/// The register starts at `2^(k-1) - ⌊M/2⌋ - 1`, so after adding `c_θ` its top
/// qubit reads 1 exactly when `c_θ > M/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountRegister {
    pub width: u32,
    pub offset: usize,
}

impl CountRegister {
    pub fn for_points(m: usize) -> Self {
        let width = RegisterLayout::count_width(m);
        let offset = (1usize << (width - 1)) - m / 2 - 1;
        Self { width, offset }
    }

    pub fn top_bit(&self) -> u32 {
        self.width - 1
    }
}

#[derive(Debug, Clone)]
pub struct GroverOutcome {
    pub state: EnsembleState,
    /// Number of models `E`.
    pub models: u64,
    /// Number of flagged models `K`, read from the count register.
    pub marked: u64,
    pub iterations: u64,
    /// `⌊(π/4)·√(E/K)⌋`
    pub default_iterations: u64,
    /// Probability of the flagged subspace after the iterations.
    pub marked_probability: f64,
}

/// `⌊(π/4)·√(E/K)⌋`.
pub fn optimal_iterations(models: u64, marked: u64) -> u64 {
    (std::f64::consts::FRAC_PI_4 * (models as f64 / marked as f64).sqrt()).floor() as u64
}

/// `sin²((2k+1)·arcsin√(K/E))`
pub fn grover_success_probability(iterations: u64, marked: u64, models: u64) -> f64 {
    let angle = (marked as f64 / models as f64).sqrt().asin();
    ((2 * iterations + 1) as f64 * angle).sin().powi(2)
}

/// Adds one to (or, without `increment`, subtracts one from) the count register of every
/// block whose model classifies the current point correctly.
fn step_counter(state: &mut EnsembleState, counts: &[u32], point: u32, register: CountRegister, increment: bool) {
    let len = 1usize << register.width;
    state.for_each_block(|theta, block| {
        if counts[theta] > point {
            for sub in block.chunks_mut(len) {
                if increment {
                    sub.rotate_right(1);
                } else {
                    sub.rotate_left(1);
                }
            }
        }
    });
}

/// Runs the counting circuit: one controlled increment per training point.
/// Model `θ` is incremented on `c_θ` of the `m` steps, which is the same
/// unitary as incrementing on exactly the points it gets right.
fn compute_counts(state: &mut EnsembleState, counts: &[u32], m: usize, register: CountRegister, forward: bool) {
    for point in 0..m as u32 {
        step_counter(state, counts, point, register, forward);
    }
}

fn phase_flip_top(state: &mut EnsembleState, register: CountRegister) {
    let mask = 1usize << register.top_bit();
    for (i, a) in state.amplitudes_mut().iter_mut().enumerate() {
        if i & mask != 0 {
            *a = -*a;
        }
    }
}

/// Reflection about the uniform superposition of the parameter register,
/// `2|s⟩⟨s| - 𝟙`, applied as inversion about the mean for every setting of
/// the lower registers.
fn diffuse(state: &mut EnsembleState) {
    let block = state.layout().block_len();
    let models = state.layout().models() as f64;
    let amps = state.amplitudes_mut();
    let mut mean = vec![Complex64::new(0.0, 0.0); block];
    for chunk in amps.chunks(block) {
        for (m, a) in mean.iter_mut().zip(chunk) {
            *m += a;
        }
    }
    mean.iter_mut().for_each(|m| *m /= models);
    for chunk in amps.chunks_mut(block) {
        for (a, m) in chunk.iter_mut().zip(&mean) {
            *a = 2.0 * m - *a;
        }
    }
}

/// Amplitude amplification of the models with `c_θ > M/2`, given the
/// per-model correct counts of an `m`-point training set.
pub fn grover_filter_from_counts(counts: &[u32], m: usize, iterations: Option<u64>) -> Result<GroverOutcome> {
    if !counts.len().is_power_of_two() || counts.is_empty() {
        return domain(format!("{} models do not fill a parameter register", counts.len()));
    }
    if let Some(c) = counts.iter().find(|c| **c as usize > m) {
        return domain(format!("count {c} exceeds {m} training points"));
    }
    let register = CountRegister::for_points(m);
    let layout = RegisterLayout::new(counts.len().trailing_zeros(), register.width)?;
    let mut state = prepare_uniform(layout, DEFAULT_QUBIT_CAP)?;
    for bit in 0..register.width {
        if register.offset >> bit & 1 == 1 {
            state.pauli_x(bit);
        }
    }

    let models = layout.models() as u64;
    let read_marked = |state: &mut EnsembleState| {
        compute_counts(state, counts, m, register, true);
        let p = state.bit_probability(register.top_bit());
        compute_counts(state, counts, m, register, false);
        p
    };

    let p_marked = read_marked(&mut state);
    let marked = (p_marked * models as f64).round() as u64;
    if marked == 0 {
        return Err(Error::Domain("no model classifies more than half of the training points".into()));
    }
    let default_iterations = optimal_iterations(models, marked);
    let iterations = iterations.unwrap_or(default_iterations);

    for _ in 0..iterations {
        compute_counts(&mut state, counts, m, register, true);
        phase_flip_top(&mut state, register);
        compute_counts(&mut state, counts, m, register, false);
        diffuse(&mut state);
    }
    let marked_probability = read_marked(&mut state);

    Ok(GroverOutcome { state, models, marked, iterations, default_iterations, marked_probability })
}

/// Amplifies the accurate models (`c_θ > M/2`) of a grid. `iterations`
/// defaults to [`optimal_iterations`]; zero iterations leaves the uniform
/// superposition untouched.
pub fn grover_accurate_filter(
    family: &ModelFamily,
    grid: &ParameterGrid,
    dataset: &Dataset,
    iterations: Option<u64>,
) -> Result<GroverOutcome> {
    if grid.register_bits().is_none() {
        return domain("grover filter needs a qubit-addressable grid");
    }
    let counts = grid_correct_counts(family, grid, dataset)?;
    grover_filter_from_counts(&counts, dataset.len(), iterations)
}
