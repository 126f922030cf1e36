//! JSON configuration documents, one per command. Every field has a
//! default, so an empty object `{}` (or no `--config` at all) runs the
//! documented reference setup. Unknown fields are rejected.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use qens_core::analytic::{ClassDensity, DecisionProblem1D};
use qens_core::datagen::{gaussian_blobs, BlobSpec};
use qens_core::model::{Dataset, Interval, Label, LabeledPoint, ModelFamily, ParameterGrid};
use qens_core::weighting::WeightScheme;

use crate::error::{usage, CliError, Result};

pub fn load<T: DeserializeOwned + Default>(path: Option<&Path>) -> Result<T> {
    let Some(path) = path else {
        return Ok(T::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config { path: path.to_owned(), message: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| CliError::Config { path: path.to_owned(), message: e.to_string() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    Threshold,
    Perceptron { inputs: usize },
    Mlp { inputs: usize, hidden: [usize; 2] },
}

impl FamilySpec {
    pub fn build(&self) -> Result<ModelFamily> {
        let family = match *self {
            FamilySpec::Threshold => ModelFamily::Threshold1D,
            FamilySpec::Perceptron { inputs } => ModelFamily::Perceptron { inputs },
            FamilySpec::Mlp { inputs, hidden } => ModelFamily::Mlp2Hidden { inputs, hidden },
        };
        family.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(family)
    }
}

/// One `[lo, hi]` per parameter, or a single interval shared by all of
/// them. Exactly one of `bits_per_parameter` and `levels` must be given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub intervals: Vec<[f64; 2]>,
    #[serde(default)]
    pub bits_per_parameter: Option<u32>,
    #[serde(default)]
    pub levels: Option<u64>,
}

impl GridSpec {
    pub fn build(&self, family: &ModelFamily) -> Result<ParameterGrid> {
        let p = family.parameter_count();
        let raw: Vec<[f64; 2]> = match self.intervals.len() {
            1 => vec![self.intervals[0]; p],
            n if n == p => self.intervals.clone(),
            n => return usage(format!("{n} grid intervals for {p} parameters")),
        };
        let intervals = raw
            .iter()
            .map(|&[lo, hi]| Interval::new(lo, hi))
            .collect::<qens_core::Result<Vec<_>>>()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let grid = match (self.bits_per_parameter, self.levels) {
            (Some(bits), None) => ParameterGrid::new(intervals, bits),
            (None, Some(levels)) => ParameterGrid::with_levels(intervals, levels),
            _ => return usage("grid needs exactly one of bits_per_parameter and levels"),
        };
        grid.map_err(|e| match e {
            qens_core::Error::Resource(_) => CliError::Core(e),
            other => CliError::Usage(other.to_string()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case", deny_unknown_fields)]
pub enum DatasetSpec {
    /// CSV with header `x1,…,xN,y`.
    File { path: PathBuf },
    Blobs {
        mean_minus: Vec<f64>,
        mean_plus: Vec<f64>,
        sigma: f64,
        samples_minus: usize,
        samples_plus: usize,
        /// Falls back to the run seed when absent.
        #[serde(default)]
        seed: Option<u64>,
    },
    /// Inline `[[x1, …, xN], y]` pairs.
    Points { points: Vec<(Vec<f64>, i64)> },
}

impl DatasetSpec {
    pub fn build(&self, run_seed: u64) -> Result<Dataset> {
        match self {
            DatasetSpec::File { path } => Ok(Dataset::load(path)?),
            DatasetSpec::Blobs { mean_minus, mean_plus, sigma, samples_minus, samples_plus, seed } => {
                let spec = BlobSpec {
                    mean_minus: mean_minus.clone(),
                    mean_plus: mean_plus.clone(),
                    sigma: *sigma,
                    samples_minus: *samples_minus,
                    samples_plus: *samples_plus,
                    seed: seed.unwrap_or(run_seed),
                };
                spec.validate().map_err(|e| CliError::Usage(e.to_string()))?;
                Ok(gaussian_blobs(&spec)?)
            }
            DatasetSpec::Points { points } => {
                let mut pts = Vec::with_capacity(points.len());
                for (x, y) in points {
                    let Some(label) = Label::from_i64(*y) else {
                        return usage(format!("labels must be -1 or 1, got {y}"));
                    };
                    pts.push(LabeledPoint::new(x.clone(), label).map_err(|e| CliError::Usage(e.to_string()))?);
                }
                Dataset::new(pts).map_err(|e| CliError::Usage(e.to_string()))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DensitySpec {
    Gaussian { mean: f64, sigma: f64 },
    Box { center: f64, width: f64 },
    Laplace { mean: f64, scale: f64 },
    Cauchy { location: f64, scale: f64 },
}

impl DensitySpec {
    pub fn build(&self) -> Result<ClassDensity> {
        let d = match *self {
            DensitySpec::Gaussian { mean, sigma } => ClassDensity::gaussian(mean, sigma),
            DensitySpec::Box { center, width } => ClassDensity::boxcar(center, width),
            DensitySpec::Laplace { mean, scale } => ClassDensity::laplace(mean, scale),
            DensitySpec::Cauchy { location, scale } => ClassDensity::cauchy(location, scale),
        };
        d.map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub minus: DensitySpec,
    pub plus: DensitySpec,
}

impl ProblemSpec {
    pub fn gaussians(mean_minus: f64, sigma_minus: f64, mean_plus: f64, sigma_plus: f64) -> Self {
        Self {
            minus: DensitySpec::Gaussian { mean: mean_minus, sigma: sigma_minus },
            plus: DensitySpec::Gaussian { mean: mean_plus, sigma: sigma_plus },
        }
    }

    pub fn build(&self) -> Result<DecisionProblem1D> {
        Ok(DecisionProblem1D::new(self.minus.build()?, self.plus.build()?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeSpec {
    Uniform,
    Accuracy,
    LogOdds,
    EffectiveCentered,
}

impl From<SchemeSpec> for WeightScheme {
    fn from(s: SchemeSpec) -> Self {
        match s {
            SchemeSpec::Uniform => WeightScheme::Uniform,
            SchemeSpec::Accuracy => WeightScheme::Accuracy,
            SchemeSpec::LogOdds => WeightScheme::LogOdds,
            SchemeSpec::EffectiveCentered => WeightScheme::EffectiveCentered,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RotationSpec {
    Exact,
    /// `delta` defaults to `π / (4M)`.
    Sequential {
        #[serde(default)]
        delta: Option<f64>,
    },
}

fn two_blobs(sigma: f64, per_class: usize) -> DatasetSpec {
    DatasetSpec::Blobs {
        mean_minus: vec![-1.0, 1.0],
        mean_plus: vec![1.0, -1.0],
        sigma,
        samples_minus: per_class,
        samples_plus: per_class,
        seed: None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig2Config {
    /// Member accuracies, one Condorcet curve each.
    pub accuracies: Vec<f64>,
    /// Largest (odd) committee size.
    pub max_size: u64,
    /// Interior sample count for the odds-ratio curves on `(0, 1)`.
    pub odds_points: usize,
}

impl Default for Fig2Config {
    fn default() -> Self {
        Self { accuracies: vec![0.45, 0.5, 0.55, 0.6, 0.7], max_size: 1001, odds_points: 99 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig4Config {
    /// Interior sample count on `(0, 1)`.
    pub points: usize,
}

impl Default for Fig4Config {
    fn default() -> Self {
        Self { points: 199 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig5Config {
    pub problem: ProblemSpec,
    pub x_min: f64,
    pub x_step: f64,
    pub x_points: usize,
}

impl Default for Fig5Config {
    fn default() -> Self {
        Self { problem: ProblemSpec::gaussians(-1.0, 0.5, 1.0, 0.5), x_min: -3.0, x_step: 0.025, x_points: 241 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig6Config {
    pub seed: u64,
    pub dataset: DatasetSpec,
    /// Values per parameter in `[parameter_min, parameter_max]`.
    pub levels: u64,
    pub parameter_min: f64,
    pub parameter_max: f64,
    pub raster_min: f64,
    pub raster_step: f64,
    pub raster_points: usize,
    /// Samples along the segment between the two class means.
    pub segment_points: usize,
    /// Allowed distance of the boundary crossing from the mean midpoint.
    pub crossing_tolerance: f64,
}

impl Default for Fig6Config {
    fn default() -> Self {
        Self {
            seed: 6,
            dataset: two_blobs(1.0, 100),
            levels: 20,
            parameter_min: -1.0,
            parameter_max: 1.0,
            raster_min: -2.0,
            raster_step: 0.05,
            raster_points: 81,
            segment_points: 2001,
            crossing_tolerance: 0.15,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig7Config {
    pub x_tilde: f64,
    pub w0_step: f64,
    pub examples: Vec<ProblemSpec>,
    /// Offsets from the mean midpoint over which accuracy asymmetry is measured.
    pub asymmetry_half_width: f64,
    pub asymmetry_points: usize,
}

impl Default for Fig7Config {
    fn default() -> Self {
        Self {
            x_tilde: 1.0,
            w0_step: 0.01,
            examples: vec![ProblemSpec::gaussians(-1.0, 0.5, 1.0, 0.5), ProblemSpec::gaussians(-1.0, 0.5, 1.0, 2.0)],
            asymmetry_half_width: 5.0,
            asymmetry_points: 1001,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifyConfig {
    pub seed: u64,
    pub family: FamilySpec,
    pub grid: GridSpec,
    pub dataset: DatasetSpec,
    pub queries: Vec<Vec<f64>>,
    pub rotation: RotationSpec,
    /// Scheme of the extra classical report; the quantum path always
    /// realizes accuracy weights.
    pub scheme: SchemeSpec,
    pub shots: u64,
    pub qubit_cap: u32,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            family: FamilySpec::Perceptron { inputs: 2 },
            grid: GridSpec { intervals: vec![[-1.0, 1.0]], bits_per_parameter: Some(2), levels: None },
            dataset: two_blobs(1.0, 20),
            queries: vec![vec![-1.0, 1.0], vec![1.0, -1.0], vec![0.0, 0.0], vec![0.5, 0.2]],
            rotation: RotationSpec::Exact,
            scheme: SchemeSpec::Accuracy,
            shots: 10_000,
            qubit_cap: qens_core::sim::DEFAULT_QUBIT_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GroverConfig {
    pub seed: u64,
    pub family: FamilySpec,
    pub grid: GridSpec,
    pub dataset: DatasetSpec,
    /// Defaults to `⌊(π/4)·√(E/K)⌋`.
    pub iterations: Option<u64>,
    pub qubit_cap: u32,
}

impl Default for GroverConfig {
    fn default() -> Self {
        // 16 thresholds; exactly the 4 with positive orientation and an
        // offset between the two points get both right, so K/E = 1/4
        Self {
            seed: 1,
            family: FamilySpec::Threshold,
            grid: GridSpec { intervals: vec![[-1.0, 1.0], [-3.0, 3.0]], bits_per_parameter: Some(2), levels: None },
            dataset: DatasetSpec::Points { points: vec![(vec![-2.0], -1), (vec![2.0], 1)] },
            iterations: None,
            qubit_cap: qens_core::sim::DEFAULT_QUBIT_CAP,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_documents_give_defaults() {
        let c: ClassifyConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(c, ClassifyConfig::default());
        let c: Fig7Config = serde_json::from_str("{}").unwrap();
        assert_eq!(c.examples.len(), 2);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(serde_json::from_str::<Fig2Config>(r#"{"acuracies": [0.6]}"#).is_err());
    }

    #[test]
    fn tagged_specs_round_trip() {
        let text = r#"{"family": {"kind": "mlp", "inputs": 2, "hidden": [2, 2]},
                       "grid": {"intervals": [[-1, 1]], "bits_per_parameter": 1},
                       "dataset": {"source": "points", "points": [[[0.5, 0.5], 1], [[-0.5, 0.1], -1]]},
                       "rotation": {"kind": "sequential"}}"#;
        let c: ClassifyConfig = serde_json::from_str(text).unwrap();
        let fam = c.family.build().unwrap();
        assert_eq!(c.grid.build(&fam).unwrap().size(), 1 << 10);
        assert_eq!(c.dataset.build(0).unwrap().len(), 2);
        assert_eq!(c.rotation, RotationSpec::Sequential { delta: None });
        let back: ClassifyConfig = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn grid_spec_errors() {
        let fam = ModelFamily::Perceptron { inputs: 2 };
        let both = GridSpec { intervals: vec![[-1.0, 1.0]], bits_per_parameter: Some(1), levels: Some(4) };
        assert!(matches!(both.build(&fam), Err(CliError::Usage(_))));
        let wrong = GridSpec { intervals: vec![[-1.0, 1.0]; 2], bits_per_parameter: Some(1), levels: None };
        assert!(matches!(wrong.build(&fam), Err(CliError::Usage(_))));
        let huge = GridSpec { intervals: vec![[-1.0, 1.0]], bits_per_parameter: Some(30), levels: None };
        assert!(huge.build(&fam).is_err());
    }
}
