//! One module per command. Each writes its CSV/SVG files plus a JSON report
//! into the run directory and returns the consistency checks it evaluated.

pub mod classify;
pub mod fig2;
pub mod fig4;
pub mod fig5;
pub mod fig6;
pub mod fig7;
pub mod grover;

/// `start + i·step` for `i in 0..n`, computed per index so the values do
/// not depend on accumulated rounding.
pub(crate) fn linspace_step(start: f64, step: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| start + i as f64 * step).collect()
}

/// `n` points strictly inside `(0, 1)`: `i / (n + 1)`.
pub(crate) fn open_unit(n: usize) -> Vec<f64> {
    (1..=n).map(|i| i as f64 / (n + 1) as f64).collect()
}
