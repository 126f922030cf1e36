use libm::erfc;

use crate::error::{domain, Result};

/// Class-conditional density `g(x)` with closed-form CDF `G(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassDensity {
    Gaussian { mean: f64, sigma: f64 },
    /// Uniform on `[center - width/2, center + width/2]`.
    Box { center: f64, width: f64 },
    Laplace { mean: f64, scale: f64 },
    Cauchy { location: f64, scale: f64 },
}

impl ClassDensity {
    pub fn gaussian(mean: f64, sigma: f64) -> Result<Self> {
        Self::Gaussian { mean, sigma }.validated()
    }

    pub fn boxcar(center: f64, width: f64) -> Result<Self> {
        Self::Box { center, width }.validated()
    }

    pub fn laplace(mean: f64, scale: f64) -> Result<Self> {
        Self::Laplace { mean, scale }.validated()
    }

    pub fn cauchy(location: f64, scale: f64) -> Result<Self> {
        Self::Cauchy { location, scale }.validated()
    }

    fn validated(self) -> Result<Self> {
        let (loc, scale) = (self.location(), self.scale());
        if !loc.is_finite() || !(scale > 0.0 && scale.is_finite()) {
            return domain(format!("{self:?} needs a finite location and positive scale"));
        }
        Ok(self)
    }

    /// Mean, center or median.
    pub fn location(&self) -> f64 {
        match *self {
            ClassDensity::Gaussian { mean, .. } | ClassDensity::Laplace { mean, .. } => mean,
            ClassDensity::Box { center, .. } => center,
            ClassDensity::Cauchy { location, .. } => location,
        }
    }

    /// `σ`, box width, Laplace `b` or Cauchy `γ`.
    pub fn scale(&self) -> f64 {
        match *self {
            ClassDensity::Gaussian { sigma, .. } => sigma,
            ClassDensity::Box { width, .. } => width,
            ClassDensity::Laplace { scale, .. } | ClassDensity::Cauchy { scale, .. } => scale,
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match *self {
            ClassDensity::Gaussian { mean, sigma } => {
                let z = (x - mean) / sigma;
                (-0.5 * z * z).exp() / (sigma * (2.0 * std::f64::consts::PI).sqrt())
            }
            ClassDensity::Box { center, width } => {
                if (x - center).abs() <= 0.5 * width {
                    1.0 / width
                } else {
                    0.0
                }
            }
            ClassDensity::Laplace { mean, scale } => (-(x - mean).abs() / scale).exp() / (2.0 * scale),
            ClassDensity::Cauchy { location, scale } => {
                let z = (x - location) / scale;
                1.0 / (std::f64::consts::PI * scale * (1.0 + z * z))
            }
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            ClassDensity::Gaussian { mean, sigma } => 0.5 * erfc(-(x - mean) / (std::f64::consts::SQRT_2 * sigma)),
            ClassDensity::Box { center, width } => ((x - (center - 0.5 * width)) / width).clamp(0.0, 1.0),
            ClassDensity::Laplace { mean, scale } => {
                if x < mean {
                    0.5 * ((x - mean) / scale).exp()
                } else {
                    1.0 - 0.5 * (-(x - mean) / scale).exp()
                }
            }
            ClassDensity::Cauchy { location, scale } => cauchy_lower(-(x - location) / scale),
        }
    }

    /// `1 - G(x)`, accurate in the upper tail.
    pub fn sf(&self, x: f64) -> f64 {
        match *self {
            ClassDensity::Gaussian { mean, sigma } => 0.5 * erfc((x - mean) / (std::f64::consts::SQRT_2 * sigma)),
            ClassDensity::Box { center, width } => (((center + 0.5 * width) - x) / width).clamp(0.0, 1.0),
            ClassDensity::Laplace { mean, scale } => {
                if x > mean {
                    0.5 * (-(x - mean) / scale).exp()
                } else {
                    1.0 - 0.5 * ((x - mean) / scale).exp()
                }
            }
            ClassDensity::Cauchy { location, scale } => cauchy_lower((x - location) / scale),
        }
    }

    /// Points where the density or its derivative is not smooth, plus the location.
    pub fn breakpoints(&self) -> Vec<f64> {
        match *self {
            ClassDensity::Box { center, width } => vec![center - 0.5 * width, center, center + 0.5 * width],
            _ => vec![self.location()],
        }
    }
}

/// Mass of a standard Cauchy below `-z`, without cancellation for large `z`.
fn cauchy_lower(z: f64) -> f64 {
    if z > 0.0 {
        (1.0 / z).atan() / std::f64::consts::PI
    } else {
        0.5 - z.atan() / std::f64::consts::PI
    }
}
