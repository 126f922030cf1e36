//! One-dimensional continuous limit of the accuracy-weighted threshold
//! ensemble: accuracies over class densities, the expectation integral,
//! its Gaussian closed form and the resulting decision boundary.
//!
//! The model family is `f(x; w0, o) = o · sgn(x - w0)` with `w0` ranging
//! over the real line and `o ∈ {-1, +1}`.

mod density;
pub mod quadrature;

use std::io::Write;

use rayon::prelude::*;
use libm::erf;

use crate::error::{domain, Error, Result};
use crate::model::Label;

pub use density::ClassDensity;

/// Absolute bound on the neglected tails of the expectation integral.
pub const TAIL_TOLERANCE: f64 = 1e-10;
/// Initial truncation multiple of the widest scale beyond the outer means.
pub const INITIAL_TRUNCATION: f64 = 12.0;
/// Bisection stops once the bracket is narrower than this.
pub const BOUNDARY_TOLERANCE: f64 = 1e-8;
/// Bisection search range in multiples of the widest scale.
pub const BOUNDARY_SEARCH_SCALES: f64 = 10.0;
/// Endpoint expectations smaller than this count as zero when looking for
/// a sign change; it sits above the quadrature and truncation error.
pub const EXPECTATION_NOISE: f64 = 1e-9;

const QUADRATURE_TOLERANCE: f64 = 1e-11;
const MAX_TRUNCATION_DOUBLINGS: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecisionProblem1D {
    pub density_minus: ClassDensity,
    pub density_plus: ClassDensity,
}

impl DecisionProblem1D {
    pub fn new(density_minus: ClassDensity, density_plus: ClassDensity) -> Self {
        Self { density_minus, density_plus }
    }

    pub fn gaussians(mean_minus: f64, sigma_minus: f64, mean_plus: f64, sigma_plus: f64) -> Result<Self> {
        Ok(Self::new(
            ClassDensity::gaussian(mean_minus, sigma_minus)?,
            ClassDensity::gaussian(mean_plus, sigma_plus)?,
        ))
    }

    pub fn density(&self, label: Label) -> &ClassDensity {
        match label {
            Label::Minus => &self.density_minus,
            Label::Plus => &self.density_plus,
        }
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.density_minus.location() + self.density_plus.location())
    }

    fn max_scale(&self) -> f64 {
        self.density_minus.scale().max(self.density_plus.scale())
    }

    fn location_span(&self) -> (f64, f64) {
        let (a, b) = (self.density_minus.location(), self.density_plus.location());
        (a.min(b), a.max(b))
    }

    /// `G-(w0) - G+(w0)`, from survival functions on the upper side to
    /// avoid cancellation in the far right tail.
    fn cdf_gap(&self, w0: f64) -> f64 {
        if w0 > self.midpoint() {
            self.density_plus.sf(w0) - self.density_minus.sf(w0)
        } else {
            self.density_minus.cdf(w0) - self.density_plus.cdf(w0)
        }
    }

    /// Finite domain outside of which the expectation integrand contributes
    /// less than [`TAIL_TOLERANCE`]. Starts at [`INITIAL_TRUNCATION`] scales
    /// beyond the outer means and doubles until both tails are negligible.
    pub fn truncation_domain(&self) -> Result<(f64, f64)> {
        let (lo_mean, hi_mean) = self.location_span();
        let scale = self.max_scale();
        let mut k = INITIAL_TRUNCATION;
        for _ in 0..=MAX_TRUNCATION_DOUBLINGS {
            let reach = k * scale;
            let (lo, hi) = (lo_mean - reach, hi_mean + reach);
            // A tail decaying no slower than 1/w² integrates to at most
            // |gap(cut)| times the distance of the cut from the mass.
            let bound = (self.cdf_gap(lo).abs() + self.cdf_gap(hi).abs()) * (reach + scale);
            if bound < TAIL_TOLERANCE {
                return Ok((lo, hi));
            }
            k *= 2.0;
        }
        Err(Error::Accuracy(format!(
            "expectation integrand still above {TAIL_TOLERANCE:e} at {k} scales beyond the means"
        )))
    }
}

/// Fraction of the class mass a threshold at `w0` with orientation `o`
/// classifies correctly, assuming equal class priors.
pub fn accuracy_continuous(problem: &DecisionProblem1D, w0: f64, o: Label) -> f64 {
    let plus = 0.5 * problem.density_minus.cdf(w0) + 0.5 * (1.0 - problem.density_plus.cdf(w0));
    match o {
        Label::Plus => plus,
        Label::Minus => 1.0 - plus,
    }
}

/// Antiderivative of `erf((x - mean) / (√2 σ))` in `x`.
pub fn gamma_antiderivative(x: f64, mean: f64, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return domain(format!("sigma must be positive, got {sigma}"));
    }
    let d = x - mean;
    let z = d / (std::f64::consts::SQRT_2 * sigma);
    Ok(d * erf(z) + (2.0 / std::f64::consts::PI).sqrt() * sigma * (-z * z).exp())
}

fn sign_from(x_tilde: f64, w0: f64) -> f64 {
    if x_tilde - w0 >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// Ensemble expectation at `x_tilde` in the continuum limit,
/// `2 ∫ (G-(w0) - G+(w0)) sgn(x_tilde - w0) dw0`, by adaptive quadrature.
pub fn expectation_quadrature(problem: &DecisionProblem1D, x_tilde: f64) -> Result<f64> {
    if !x_tilde.is_finite() {
        return domain(format!("query point must be finite, got {x_tilde}"));
    }
    let (lo, hi) = problem.truncation_domain()?;
    let (lo, hi) = (lo.min(x_tilde), hi.max(x_tilde));
    let mut breaks = vec![x_tilde];
    breaks.extend(problem.density_minus.breakpoints());
    breaks.extend(problem.density_plus.breakpoints());
    // geometric nodes keep panel widths comparable to the distance from the mass
    for density in [problem.density_minus, problem.density_plus] {
        let (center, mut step) = (density.location(), density.scale());
        while center - step > lo || center + step < hi {
            breaks.push(center - step);
            breaks.push(center + step);
            step *= 2.0;
        }
    }
    let integrand = |w0: f64| problem.cdf_gap(w0) * sign_from(x_tilde, w0);
    Ok(2.0 * quadrature::integrate_with_breaks(integrand, lo, hi, &breaks, QUADRATURE_TOLERANCE)?)
}

/// `2γ-(x_tilde) - 2γ+(x_tilde)` for a pair of equal-σ Gaussians.
pub fn expectation_closed_equal_sigma(problem: &DecisionProblem1D, x_tilde: f64) -> Result<f64> {
    match (problem.density_minus, problem.density_plus) {
        (
            ClassDensity::Gaussian { mean: mean_minus, sigma: sigma_minus },
            ClassDensity::Gaussian { mean: mean_plus, sigma: sigma_plus },
        ) => {
            if sigma_minus != sigma_plus {
                return domain(format!("closed form needs equal sigmas, got {sigma_minus} and {sigma_plus}"));
            }
            Ok(2.0 * gamma_antiderivative(x_tilde, mean_minus, sigma_minus)?
                - 2.0 * gamma_antiderivative(x_tilde, mean_plus, sigma_plus)?)
        }
        _ => domain("closed form is only defined for two Gaussian densities"),
    }
}

/// Expectation at each query point, in input order.
pub fn expectation_curve(problem: &DecisionProblem1D, xs: &[f64]) -> Result<Vec<f64>> {
    xs.par_iter().map(|&x| expectation_quadrature(problem, x)).collect()
}

/// Root of the expectation by bisection on
/// `[min mean - 10·scale, max mean + 10·scale]`.
pub fn decision_boundary(problem: &DecisionProblem1D) -> Result<f64> {
    let (lo_mean, hi_mean) = problem.location_span();
    let reach = BOUNDARY_SEARCH_SCALES * problem.max_scale();
    let (mut lo, mut hi) = (lo_mean - reach, hi_mean + reach);
    let f_lo = expectation_quadrature(problem, lo)?;
    let f_hi = expectation_quadrature(problem, hi)?;
    if !(f_lo * f_hi < 0.0 && f_lo.abs() > EXPECTATION_NOISE && f_hi.abs() > EXPECTATION_NOISE) {
        return Err(Error::NoBoundary(format!(
            "expectation does not change sign on [{lo}, {hi}] (values {f_lo:e}, {f_hi:e})"
        )));
    }
    let rising = f_lo < 0.0;
    while hi - lo >= BOUNDARY_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        let f_mid = expectation_quadrature(problem, mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `max_d |a(m + d, +1) - a(m - d, +1)|` over `samples` offsets in
/// `[0, half_width]`, with `m` the midpoint of the class locations.
pub fn accuracy_asymmetry(problem: &DecisionProblem1D, half_width: f64, samples: usize) -> f64 {
    let m = problem.midpoint();
    let steps = samples.max(2) - 1;
    (0..=steps)
        .map(|i| {
            let d = half_width * i as f64 / steps as f64;
            (accuracy_continuous(problem, m + d, Label::Plus) - accuracy_continuous(problem, m - d, Label::Plus)).abs()
        })
        .fold(0.0, f64::max)
}

/// Evenly spaced `w0` values covering the truncation domain.
pub fn default_w0_grid(problem: &DecisionProblem1D, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) {
        return domain(format!("grid step must be positive, got {step}"));
    }
    let (lo, hi) = problem.truncation_domain()?;
    let n = ((hi - lo) / step).ceil() as usize;
    Ok((0..=n).map(|i| lo + i as f64 * step).collect())
}

/// Sampled integrand decomposition at a fixed query point.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrandCurves {
    pub x_tilde: f64,
    /// Ascending; `x_tilde` appears twice when inside the grid, carrying the
    /// left and right limits of the discontinuous series.
    pub w0: Vec<f64>,
    pub density_minus: Vec<f64>,
    pub density_plus: Vec<f64>,
    pub accuracy_plus: Vec<f64>,
    pub accuracy_minus: Vec<f64>,
    pub classification_plus: Vec<f64>,
    pub classification_minus: Vec<f64>,
    pub product_plus: Vec<f64>,
    pub product_minus: Vec<f64>,
    /// `2 Σ_o a(w0, o) f(x_tilde; w0, o)`; integrates to the expectation.
    pub integrand: Vec<f64>,
}

impl IntegrandCurves {
    pub fn series(&self) -> [(&'static str, &[f64]); 9] {
        [
            ("density_minus", &self.density_minus),
            ("density_plus", &self.density_plus),
            ("accuracy_plus", &self.accuracy_plus),
            ("accuracy_minus", &self.accuracy_minus),
            ("classification_plus", &self.classification_plus),
            ("classification_minus", &self.classification_minus),
            ("product_plus", &self.product_plus),
            ("product_minus", &self.product_minus),
            ("integrand", &self.integrand),
        ]
    }

    /// Trapezoid integral of [`IntegrandCurves::integrand`].
    pub fn integrand_integral(&self) -> f64 {
        trapezoid(&self.w0, &self.integrand)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_series_csv(out, "w0", &self.w0, &self.series())
    }
}

pub fn integrand_decomposition(problem: &DecisionProblem1D, x_tilde: f64, w0_grid: &[f64]) -> Result<IntegrandCurves> {
    if w0_grid.windows(2).any(|w| !(w[0] < w[1])) || w0_grid.iter().any(|w| !w.is_finite()) {
        return domain("w0 grid must be finite and strictly ascending");
    }
    let mut nodes: Vec<(f64, f64)> = Vec::with_capacity(w0_grid.len() + 2);
    let inside = w0_grid.first().is_some_and(|&a| a <= x_tilde) && w0_grid.last().is_some_and(|&b| x_tilde <= b);
    for &w in w0_grid {
        if inside && w == x_tilde {
            continue;
        }
        if inside && w > x_tilde && nodes.last().is_none_or(|&(p, _)| p < x_tilde) {
            nodes.push((x_tilde, 1.0));
            nodes.push((x_tilde, -1.0));
        }
        nodes.push((w, sign_from(x_tilde, w)));
    }
    if inside && nodes.last().is_none_or(|&(p, _)| p < x_tilde) {
        nodes.push((x_tilde, 1.0));
        nodes.push((x_tilde, -1.0));
    }

    let n = nodes.len();
    let mut c = IntegrandCurves {
        x_tilde,
        w0: Vec::with_capacity(n),
        density_minus: Vec::with_capacity(n),
        density_plus: Vec::with_capacity(n),
        accuracy_plus: Vec::with_capacity(n),
        accuracy_minus: Vec::with_capacity(n),
        classification_plus: Vec::with_capacity(n),
        classification_minus: Vec::with_capacity(n),
        product_plus: Vec::with_capacity(n),
        product_minus: Vec::with_capacity(n),
        integrand: Vec::with_capacity(n),
    };
    for (w, s) in nodes {
        let a_plus = accuracy_continuous(problem, w, Label::Plus);
        let a_minus = accuracy_continuous(problem, w, Label::Minus);
        c.w0.push(w);
        c.density_minus.push(problem.density_minus.pdf(w));
        c.density_plus.push(problem.density_plus.pdf(w));
        c.accuracy_plus.push(a_plus);
        c.accuracy_minus.push(a_minus);
        c.classification_plus.push(s);
        c.classification_minus.push(-s);
        c.product_plus.push(a_plus * s);
        c.product_minus.push(-a_minus * s);
        c.integrand.push(2.0 * (a_plus * s - a_minus * s));
    }
    Ok(c)
}

pub fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2).zip(y.windows(2)).map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1])).sum()
}

/// Long-format CSV `axis,value,series` with 12 significant digits.
pub fn write_series_csv<W: Write>(mut out: W, axis_name: &str, axis: &[f64], series: &[(&str, &[f64])]) -> Result<()> {
    writeln!(out, "{axis_name},value,series")?;
    for (name, values) in series {
        if values.len() != axis.len() {
            return domain(format!("series {name} has {} values for {} axis points", values.len(), axis.len()));
        }
        for (x, v) in axis.iter().zip(values.iter()) {
            writeln!(out, "{x:.11e},{v:.11e},{name}")?;
        }
    }
    Ok(())
}
