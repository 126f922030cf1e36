//! Accuracy-weighted ensembles of classifiers, evaluated both as a classical
//! exhaustive sum over a discretized parameter space and as a simulated
//! quantum state in which every model is a basis state of a parameter
//! register.
//!
//! Module map:
//!
//! - [`model`]: model families, parameter grids, datasets and training accuracy.
//! - [`weighting`]: classical weighted-vote oracle and the point-symmetry reduction.
//! - [`sim`]: dense statevector simulation of weighting, classification,
//!   postselection and amplitude amplification.
//! - [`analytic`]: continuous one-dimensional accuracy integrals and closed forms.
//! - [`committee`]: majority-vote error curves and odds-ratio conditions.
//! - [`datagen`]: seeded synthetic datasets.

// NaN-rejecting `!(x > 0.0)` guards are intentional.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod committee;
pub mod datagen;
mod error;
pub mod model;
pub mod sim;
pub mod weighting;

pub use error::{Error, Result};
