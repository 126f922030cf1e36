//! Dense statevector simulation of the accuracy-weighted quantum ensemble.
//!
//! Qubit ordering, most significant first:
//!
//! ```text
//! | parameter register (τ·P) | output (1) | accuracy (1) | count (k, optional) |
//! ```
//!
//! so the amplitudes of one parameter basis state `|θ⟩` form a contiguous
//! block of length `2^(2+k)` starting at `θ · 2^(2+k)`. The data register is
//! not simulated: the classifier routine acts as a `θ`-conditioned gate whose
//! action is computed from `f(x; θ)` directly.

mod ensemble;
mod grover;
mod state;

pub use ensemble::{
    accuracy_zero_probabilities, apply_accuracy_rotation_exact, apply_accuracy_rotation_sequential, apply_classifier,
    expectation_sigma_z,
    measure_label_distribution, postselect_accuracy_zero, prepare_uniform, sample_measurements, sequential_acceptance,
    LabelCounts, PostselectionReport,
};
pub use grover::{
    grover_accurate_filter, grover_filter_from_counts, grover_success_probability, optimal_iterations, CountRegister,
    GroverOutcome,
};
pub use state::{EnsembleState, RegisterLayout, DEFAULT_QUBIT_CAP};
