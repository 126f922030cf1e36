//! Seeded synthetic datasets.
//!
//! Every class draws from its own child stream of a [`CounterRng`] (stream
//! `0` for class -1, stream `1` for class +1), and Gaussian coordinates are
//! produced by inverting the normal CDF, so output depends only on the spec
//! and seed. Points are emitted class -1 first, then class +1.

mod rng;

use libm::erfc;

pub use rng::{mix64, CounterRng};

use crate::error::{domain, Result};
use crate::model::{Dataset, Label, LabeledPoint};

/// Isotropic Gaussian blobs, one per class.
#[derive(Debug, Clone, PartialEq)]
pub struct BlobSpec {
    pub mean_minus: Vec<f64>,
    pub mean_plus: Vec<f64>,
    pub sigma: f64,
    pub samples_minus: usize,
    pub samples_plus: usize,
    pub seed: u64,
}

impl BlobSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return domain(format!("standard deviation must be positive, got {}", self.sigma));
        }
        if self.samples_minus == 0 || self.samples_plus == 0 {
            return domain("each class needs at least one sample");
        }
        if self.mean_minus.is_empty() || self.mean_minus.len() != self.mean_plus.len() {
            return domain("class means must be nonempty and of equal dimension");
        }
        if self.mean_minus.iter().chain(&self.mean_plus).any(|v| !v.is_finite()) {
            return domain("class means must be finite");
        }
        Ok(())
    }
}

fn draw_class(rng: CounterRng, mean: &[f64], sigma: f64, n: usize, label: Label) -> Result<Vec<LabeledPoint>> {
    let dim = mean.len() as u64;
    (0..n as u64)
        .map(|i| {
            let x = mean
                .iter()
                .enumerate()
                .map(|(d, mu)| mu + sigma * rng.normal_at(i * dim + d as u64))
                .collect();
            LabeledPoint::new(x, label)
        })
        .collect()
}

pub fn gaussian_blobs(spec: &BlobSpec) -> Result<Dataset> {
    spec.validate()?;
    let root = CounterRng::new(spec.seed);
    let mut points = draw_class(root.split(0), &spec.mean_minus, spec.sigma, spec.samples_minus, Label::Minus)?;
    points.extend(draw_class(root.split(1), &spec.mean_plus, spec.sigma, spec.samples_plus, Label::Plus)?);
    Dataset::new(points)
}

/// One-dimensional pair of Gaussian classes with `n` samples each.
pub fn gaussian_1d_pair(
    mean_minus: f64,
    sigma_minus: f64,
    mean_plus: f64,
    sigma_plus: f64,
    n: usize,
    seed: u64,
) -> Result<Dataset> {
    if n == 0 {
        return domain("need at least one sample per class");
    }
    for s in [sigma_minus, sigma_plus] {
        if !(s > 0.0 && s.is_finite()) {
            return domain(format!("standard deviation must be positive, got {s}"));
        }
    }
    let root = CounterRng::new(seed);
    let mut points = draw_class(root.split(0), &[mean_minus], sigma_minus, n, Label::Minus)?;
    points.extend(draw_class(root.split(1), &[mean_plus], sigma_plus, n, Label::Plus)?);
    Dataset::new(points)
}

/// Standard normal quantile `Φ⁻¹(p)` for `p ∈ (0, 1)`.
///
/// Acklam's rational approximation (relative error below 1.2e-9) followed
/// by one Halley step on `Φ(x) - p` using `erfc`, which brings the result to
/// near machine precision.
pub fn inverse_normal_cdf(p: f64) -> f64 {
    #[allow(clippy::excessive_precision)]
    const A: [f64; 6] = [
        -3.969683028665376e1,
        2.209460984245205e2,
        -2.759285104469687e2,
        1.383577518672690e2,
        -3.066479806614716e1,
        2.506628277459239,
    ];
    #[allow(clippy::excessive_precision)]
    const B: [f64; 5] = [
        -5.447609879822406e1,
        1.615858368580409e2,
        -1.556989798598866e2,
        6.680131188771972e1,
        -1.328068155288572e1,
    ];
    #[allow(clippy::excessive_precision)]
    const C: [f64; 6] = [
        -7.784894002430293e-3,
        -3.223964580411365e-1,
        -2.400758277161838,
        -2.549732539343734,
        4.374664141464968,
        2.938163982698783,
    ];
    #[allow(clippy::excessive_precision)]
    const D: [f64; 4] = [7.784695709041462e-3, 3.224671290700398e-1, 2.445134137142996, 3.754408661907416];
    const P_LOW: f64 = 0.02425;

    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    let x = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    let e = 0.5 * erfc(-x / std::f64::consts::SQRT_2) - p;
    let u = e * (2.0 * std::f64::consts::PI).sqrt() * (x * x / 2.0).exp();
    x - u / (1.0 + x * u / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blob_spec(n: usize, seed: u64) -> BlobSpec {
        BlobSpec {
            mean_minus: vec![-1.0, 1.0],
            mean_plus: vec![1.0, -1.0],
            sigma: 0.5,
            samples_minus: n,
            samples_plus: n,
            seed,
        }
    }

    #[test]
    fn quantile_matches_known_values() {
        assert_eq!(inverse_normal_cdf(0.5), 0.0);
        assert!((inverse_normal_cdf(0.975) - 1.959963984540054).abs() < 1e-13);
        assert!((inverse_normal_cdf(0.001) + 3.090232306167813).abs() < 1e-12);
        assert!((inverse_normal_cdf(1e-10) + 6.361340902404056).abs() < 1e-9);
        for i in 1..1000 {
            let p = i as f64 / 1000.0;
            let x = inverse_normal_cdf(p);
            let back = 0.5 * erfc(-x / std::f64::consts::SQRT_2);
            assert!((back - p).abs() < 1e-15, "p = {p}");
        }
    }

    #[test]
    fn blobs_are_byte_identical_per_seed() {
        let a = gaussian_blobs(&blob_spec(50, 3)).unwrap().to_csv_string();
        let b = gaussian_blobs(&blob_spec(50, 3)).unwrap().to_csv_string();
        assert_eq!(a, b);
        let c = gaussian_blobs(&blob_spec(50, 4)).unwrap().to_csv_string();
        assert_ne!(a, c);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let d = pool.install(|| gaussian_blobs(&blob_spec(50, 3)).unwrap().to_csv_string());
        assert_eq!(a, d);
    }

    #[test]
    fn blob_means_concentrate() {
        let d = gaussian_blobs(&blob_spec(50, 11)).unwrap();
        let tol = 3.0 * 0.5 / 50f64.sqrt();
        for (label, mean) in [(Label::Minus, [-1.0, 1.0]), (Label::Plus, [1.0, -1.0])] {
            let pts: Vec<_> = d.points().iter().filter(|p| p.y == label).collect();
            assert_eq!(pts.len(), 50);
            for (k, want) in mean.iter().enumerate() {
                let m = pts.iter().map(|p| p.x[k]).sum::<f64>() / 50.0;
                assert!((m - want).abs() < tol, "{label:?} axis {k}: {m}");
            }
        }
    }

    #[test]
    fn one_sample_per_class() {
        let d = gaussian_blobs(&blob_spec(1, 0)).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.points()[0].y, Label::Minus);
        assert_eq!(d.points()[1].y, Label::Plus);
    }

    #[test]
    fn one_dimensional_pairs() {
        let ex1 = gaussian_1d_pair(-1.0, 0.5, 1.0, 0.5, 20, 1).unwrap();
        let ex2 = gaussian_1d_pair(-1.0, 0.5, 1.0, 2.0, 20, 1).unwrap();
        assert_eq!(ex1.len(), 40);
        assert_eq!(ex1.count(Label::Plus), 20);
        assert_eq!(ex1.dim(), 1);
        // the -1 class shares its stream between the two examples
        assert_eq!(ex1.points()[..20], ex2.points()[..20]);
        assert!(gaussian_1d_pair(-1.0, 0.0, 1.0, 0.5, 20, 1).is_err());
        assert!(gaussian_1d_pair(-1.0, 0.5, 1.0, 0.5, 0, 1).is_err());
    }

    #[test]
    fn invalid_blob_specs() {
        let mut s = blob_spec(5, 0);
        s.sigma = 0.0;
        assert!(gaussian_blobs(&s).is_err());
        let mut s = blob_spec(5, 0);
        s.samples_plus = 0;
        assert!(gaussian_blobs(&s).is_err());
        let mut s = blob_spec(5, 0);
        s.mean_plus = vec![1.0];
        assert!(gaussian_blobs(&s).is_err());
    }
}
