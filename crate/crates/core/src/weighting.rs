//! Classical ensemble decision rules over every model of a parameter grid.
//!
//! The oracle here is the reference the statevector simulation is checked
//! against: it enumerates all `E` models, weighs each prediction and sums.

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::model::{Dataset, Label, ModelFamily, ParameterGrid};

/// Largest grid [`EnsembleOracle`] enumerates unless told otherwise.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// Accuracies are clamped to `[ε, 1-ε]` before the log-odds rule when clamping is enabled.
pub const LOG_ODDS_EPSILON: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightScheme {
    /// `w = 1`
    Uniform,
    /// `w = a`
    Accuracy,
    /// `w = log(a / (1 - a))`
    LogOdds,
    /// `w = a - 1/2`, restricted to accurate models inside an ensemble.
    EffectiveCentered,
}

/// A weight scheme plus the log-odds boundary policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Weighting {
    pub scheme: WeightScheme,
    pub clamp_log_odds: bool,
}

impl Weighting {
    pub fn new(scheme: WeightScheme) -> Self {
        Self { scheme, clamp_log_odds: false }
    }

    pub fn clamped(scheme: WeightScheme) -> Self {
        Self { scheme, clamp_log_odds: true }
    }

    pub fn weight(&self, a: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&a) {
            return domain(format!("accuracy {a} outside [0, 1]"));
        }
        Ok(match self.scheme {
            WeightScheme::Uniform => 1.0,
            WeightScheme::Accuracy => a,
            WeightScheme::EffectiveCentered => a - 0.5,
            WeightScheme::LogOdds => {
                let a = if self.clamp_log_odds {
                    a.clamp(LOG_ODDS_EPSILON, 1.0 - LOG_ODDS_EPSILON)
                } else if a == 0.0 || a == 1.0 {
                    return Err(Error::Unbounded(format!("log-odds weight at accuracy {a}")));
                } else {
                    a
                };
                (a / (1.0 - a)).ln()
            }
        })
    }

    /// Weight a model receives inside an ensemble sum. Identical to
    /// [`Weighting::weight`] except that the centered scheme drops models
    /// with `a <= 1/2`.
    pub fn ensemble_weight(&self, a: f64) -> Result<f64> {
        match self.scheme {
            WeightScheme::EffectiveCentered => {
                self.weight(a)?;
                Ok(if a > 0.5 { a - 0.5 } else { 0.0 })
            }
            _ => self.weight(a),
        }
    }
}

/// Weight of a single model with accuracy `a`. Log-odds at `a ∈ {0, 1}` is an error.
pub fn weight(scheme: WeightScheme, a: f64) -> Result<f64> {
    Weighting::new(scheme).weight(a)
}

/// Outcome of a weighted vote.
///
/// `p_plus`/`p_minus` are the shares of total absolute weight voting for
/// each class, where a model with negative weight votes for the opposite
/// of its prediction. For nonnegative weights this is
/// `p(c) = Σ_{f=c} w / Σ w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleDecision {
    pub raw_score: f64,
    pub label: Label,
    pub p_minus: f64,
    pub p_plus: f64,
    /// `Σ |w_θ|`
    pub total_weight: f64,
}

const LEAF: usize = 128;
const PARALLEL_MIN: usize = 1 << 14;

/// Pairwise summation with a split structure that depends only on the
/// length, so the result is identical for any number of threads.
pub fn tree_sum(values: &[f64]) -> f64 {
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let (left, right) = values.split_at(values.len() / 2);
    if values.len() >= PARALLEL_MIN {
        let (a, b) = rayon::join(|| tree_sum(left), || tree_sum(right));
        a + b
    } else {
        tree_sum(left) + tree_sum(right)
    }
}

/// Single-threaded [`tree_sum`].
pub fn tree_sum_sequential(values: &[f64]) -> f64 {
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let (left, right) = values.split_at(values.len() / 2);
    tree_sum_sequential(left) + tree_sum_sequential(right)
}

fn check_enumerable(grid: &ParameterGrid, cap: u64) -> Result<()> {
    if grid.size() > cap {
        return Err(Error::Resource(format!("grid has {} models, enumeration cap is {cap}", grid.size())));
    }
    Ok(())
}

/// Correct-classification count `c_θ` for every model, in index order.
pub fn grid_correct_counts(family: &ModelFamily, grid: &ParameterGrid, dataset: &Dataset) -> Result<Vec<u32>> {
    family.validate()?;
    family.check_dataset(dataset)?;
    if grid.parameter_count() != family.parameter_count() {
        return domain(format!(
            "grid has {} parameters, {family:?} needs {}",
            grid.parameter_count(),
            family.parameter_count()
        ));
    }
    let p = grid.parameter_count();
    Ok((0..grid.size())
        .into_par_iter()
        .map_init(
            || vec![0.0; p],
            |theta, i| {
                grid.decode_into(i, theta);
                family.correct_count_unchecked(theta, dataset) as u32
            },
        )
        .collect())
}

/// Training accuracy `a_θ` for every model, in index order.
pub fn grid_accuracies(family: &ModelFamily, grid: &ParameterGrid, dataset: &Dataset) -> Result<Vec<f64>> {
    let m = dataset.len() as f64;
    Ok(grid_correct_counts(family, grid, dataset)?.into_iter().map(|c| c as f64 / m).collect())
}

/// Prediction `f(x; θ)` of every model on one input, in index order.
pub fn grid_predictions(family: &ModelFamily, grid: &ParameterGrid, x: &[f64]) -> Result<Vec<Label>> {
    if x.len() != family.input_dim() {
        return domain(format!("query has dimension {}, model expects {}", x.len(), family.input_dim()));
    }
    if grid.parameter_count() != family.parameter_count() {
        return domain("grid and family disagree on the parameter count");
    }
    let p = grid.parameter_count();
    Ok((0..grid.size())
        .into_par_iter()
        .map_init(
            || vec![0.0; p],
            |theta, i| {
                grid.decode_into(i, theta);
                family.predict_unchecked(theta, x)
            },
        )
        .collect())
}

/// Exhaustive weighted-vote classifier over a grid. Accuracies and weights
/// are computed once; each query then costs one pass over the models.
#[derive(Debug, Clone)]
pub struct EnsembleOracle {
    family: ModelFamily,
    grid: ParameterGrid,
    accuracies: Vec<f64>,
    weights: Vec<f64>,
}

impl EnsembleOracle {
    pub fn new(family: &ModelFamily, grid: &ParameterGrid, dataset: &Dataset, weighting: Weighting) -> Result<Self> {
        Self::with_cap(family, grid, dataset, weighting, DEFAULT_ENUMERATION_CAP)
    }

    pub fn with_cap(
        family: &ModelFamily,
        grid: &ParameterGrid,
        dataset: &Dataset,
        weighting: Weighting,
        cap: u64,
    ) -> Result<Self> {
        check_enumerable(grid, cap)?;
        let accuracies = grid_accuracies(family, grid, dataset)?;
        let weights = accuracies
            .par_iter()
            .map(|&a| weighting.ensemble_weight(a))
            .collect::<Result<Vec<f64>>>()?;
        if weights.iter().all(|w| *w == 0.0) {
            return Err(Error::DegenerateEnsemble("every model has zero weight".into()));
        }
        Ok(Self { family: family.clone(), grid: grid.clone(), accuracies, weights })
    }

    pub fn accuracies(&self) -> &[f64] {
        &self.accuracies
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn grid(&self) -> &ParameterGrid {
        &self.grid
    }

    pub fn family(&self) -> &ModelFamily {
        &self.family
    }

    /// Signed contributions `w_θ f(x; θ)` in index order.
    pub fn contributions(&self, x: &[f64]) -> Result<Vec<f64>> {
        let predictions = grid_predictions(&self.family, &self.grid, x)?;
        Ok(predictions.par_iter().zip(&self.weights).map(|(f, w)| w * f.value()).collect())
    }

    pub fn decide(&self, x: &[f64]) -> Result<EnsembleDecision> {
        let terms = self.contributions(x)?;
        let raw_score = tree_sum(&terms);
        let plus: Vec<f64> = terms.iter().map(|t| t.max(0.0)).collect();
        let abs: Vec<f64> = terms.iter().map(|t| t.abs()).collect();
        let plus_mass = tree_sum(&plus);
        let total_weight = tree_sum(&abs);
        let p_plus = plus_mass / total_weight;
        Ok(EnsembleDecision {
            raw_score,
            label: Label::from_sign(raw_score),
            p_minus: 1.0 - p_plus,
            p_plus,
            total_weight,
        })
    }
}

/// One-shot [`EnsembleOracle`] query with the default cap and no log-odds clamping.
pub fn ensemble_decide(
    family: &ModelFamily,
    grid: &ParameterGrid,
    dataset: &Dataset,
    scheme: WeightScheme,
    x: &[f64],
) -> Result<EnsembleDecision> {
    EnsembleOracle::new(family, grid, dataset, Weighting::new(scheme))?.decide(x)
}

fn check_point_symmetric(family: &ModelFamily, grid: &ParameterGrid) -> Result<()> {
    if !family.is_point_symmetric() {
        return domain(format!("{family:?} is not point symmetric in its parameters"));
    }
    if !grid.is_symmetric() {
        return domain("grid is not symmetric around zero");
    }
    Ok(())
}

/// `(1/E) Σ_{θ: a_θ > 1/2} (a_θ - 1/2) f(x; θ)`: the accuracy-weighted vote
/// rewritten over the accurate half of a point-symmetric grid.
///
/// On such grids `Σ_θ a_θ f(x; θ) = 2E` times this value whenever no
/// training point lies on a model's decision surface.
pub fn effective_expectation(family: &ModelFamily, grid: &ParameterGrid, dataset: &Dataset, x: &[f64]) -> Result<f64> {
    check_point_symmetric(family, grid)?;
    check_enumerable(grid, DEFAULT_ENUMERATION_CAP)?;
    let accuracies = grid_accuracies(family, grid, dataset)?;
    let predictions = grid_predictions(family, grid, x)?;
    let terms: Vec<f64> = accuracies
        .iter()
        .zip(&predictions)
        .map(|(&a, f)| if a > 0.5 { (a - 0.5) * f.value() } else { 0.0 })
        .collect();
    Ok(tree_sum(&terms) / grid.size() as f64)
}

/// Same quantity summed with signed weights `a - 1/2` over one
/// representative of every `{θ, -θ}` pair (the one with the smaller index).
pub fn effective_expectation_signed_half(
    family: &ModelFamily,
    grid: &ParameterGrid,
    dataset: &Dataset,
    x: &[f64],
) -> Result<f64> {
    check_point_symmetric(family, grid)?;
    check_enumerable(grid, DEFAULT_ENUMERATION_CAP)?;
    let accuracies = grid_accuracies(family, grid, dataset)?;
    let predictions = grid_predictions(family, grid, x)?;
    let mut terms = Vec::with_capacity(accuracies.len() / 2);
    for i in 0..grid.size() {
        if i < grid.negated_index(i)? {
            let k = i as usize;
            terms.push((accuracies[k] - 0.5) * predictions[k].value());
        }
    }
    Ok(tree_sum(&terms) / grid.size() as f64)
}
