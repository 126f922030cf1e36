use super::{Dataset, Label};
use crate::error::{domain, Error, Result};

/// A parametrized family of deterministic binary classifiers `f(x; θ)`.
///
/// Parameter layouts:
///
/// - `Threshold1D`: `θ = (o, w0)`, `f = sgn(o·(x - w0))`. Only the sign of
///   `o` matters, so an orientation parameter discretized on `[-1, 1]` acts
///   as a binary orientation.
/// - `Perceptron { inputs: N }`: `θ = (w_1..w_N, w0)`, `f = sgn(w·x + w0)`.
/// - `Mlp2Hidden { inputs: N, hidden: [h1, h2] }`: `θ` holds the row-major
///   `h1×N` first-layer matrix, then the `h2×h1` second-layer matrix, then
///   the `h2` output weights. Hidden units use `tanh`, there are no biases,
///   and the output is `sgn` of the last layer.
///
/// All signs use `sgn(0) = +1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelFamily {
    Threshold1D,
    Perceptron { inputs: usize },
    Mlp2Hidden { inputs: usize, hidden: [usize; 2] },
}

impl ModelFamily {
    pub fn input_dim(&self) -> usize {
        match *self {
            ModelFamily::Threshold1D => 1,
            ModelFamily::Perceptron { inputs } | ModelFamily::Mlp2Hidden { inputs, .. } => inputs,
        }
    }

    pub fn parameter_count(&self) -> usize {
        match *self {
            ModelFamily::Threshold1D => 2,
            ModelFamily::Perceptron { inputs } => inputs + 1,
            ModelFamily::Mlp2Hidden { inputs, hidden: [h1, h2] } => inputs * h1 + h1 * h2 + h2,
        }
    }

    /// Whether `f(x; -θ) = -f(x; θ)` holds off the decision surface.
    pub fn is_point_symmetric(&self) -> bool {
        !matches!(self, ModelFamily::Threshold1D)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ModelFamily::Threshold1D => Ok(()),
            ModelFamily::Perceptron { inputs } if inputs >= 1 => Ok(()),
            ModelFamily::Mlp2Hidden { inputs, hidden: [h1, h2] } if inputs >= 1 && h1 >= 1 && h2 >= 1 => Ok(()),
            _ => domain(format!("degenerate architecture {self:?}")),
        }
    }

    pub fn predict(&self, theta: &[f64], x: &[f64]) -> Result<Label> {
        self.check_theta(theta)?;
        if x.len() != self.input_dim() {
            return domain(format!("input has dimension {}, model expects {}", x.len(), self.input_dim()));
        }
        Ok(self.predict_unchecked(theta, x))
    }

    /// [`ModelFamily::predict`] without dimension checks, for hot loops over
    /// already validated grids and datasets.
    #[inline]
    pub fn predict_unchecked(&self, theta: &[f64], x: &[f64]) -> Label {
        Label::from_sign(self.score_unchecked(theta, x))
    }

    /// Pre-sign output whose sign is the prediction; zero on the decision surface.
    pub fn score_unchecked(&self, theta: &[f64], x: &[f64]) -> f64 {
        match *self {
            ModelFamily::Threshold1D => {
                let o = Label::from_sign(theta[0]).value();
                o * (x[0] - theta[1])
            }
            ModelFamily::Perceptron { inputs } => {
                theta[..inputs].iter().zip(x).map(|(w, xi)| w * xi).sum::<f64>() + theta[inputs]
            }
            ModelFamily::Mlp2Hidden { inputs, hidden: [h1, h2] } => {
                let (w1, rest) = theta.split_at(inputs * h1);
                let (w2, w3) = rest.split_at(h1 * h2);
                let first: Vec<f64> = w1
                    .chunks_exact(inputs)
                    .map(|row| row.iter().zip(x).map(|(w, xi)| w * xi).sum::<f64>().tanh())
                    .collect();
                w2.chunks_exact(h1)
                    .zip(w3)
                    .map(|(row, v)| v * row.iter().zip(&first).map(|(w, h)| w * h).sum::<f64>().tanh())
                    .sum()
            }
        }
    }

    /// Number of training points classified correctly.
    pub fn correct_count(&self, theta: &[f64], dataset: &Dataset) -> Result<usize> {
        self.check_theta(theta)?;
        self.check_dataset(dataset)?;
        Ok(self.correct_count_unchecked(theta, dataset))
    }

    #[inline]
    pub fn correct_count_unchecked(&self, theta: &[f64], dataset: &Dataset) -> usize {
        dataset
            .points()
            .iter()
            .filter(|p| self.predict_unchecked(theta, &p.x) == p.y)
            .count()
    }

    /// Training accuracy `a_θ = (1/M) Σ_m ½|f(x_m; θ) + y_m|`.
    pub fn accuracy(&self, theta: &[f64], dataset: &Dataset) -> Result<f64> {
        let correct = self.correct_count(theta, dataset)?;
        Ok(correct as f64 / dataset.len() as f64)
    }

    pub fn check_theta(&self, theta: &[f64]) -> Result<()> {
        if theta.len() != self.parameter_count() {
            return domain(format!("θ has {} components, {self:?} expects {}", theta.len(), self.parameter_count()));
        }
        Ok(())
    }

    pub fn check_dataset(&self, dataset: &Dataset) -> Result<()> {
        if dataset.dim() != self.input_dim() {
            return Err(Error::Domain(format!(
                "dataset has dimension {}, model expects {}",
                dataset.dim(),
                self.input_dim()
            )));
        }
        Ok(())
    }
}

/// Componentwise negation `θ -> -θ`.
pub fn negate_params(theta: &[f64]) -> Vec<f64> {
    theta.iter().map(|v| -v).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::LabeledPoint;
    use proptest::prelude::*;

    fn pts(raw: &[(f64, i64)]) -> Dataset {
        Dataset::new(
            raw.iter()
                .map(|&(x, y)| LabeledPoint::new(vec![x], Label::from_i64(y).unwrap()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn threshold_orientation() {
        let f = ModelFamily::Threshold1D;
        assert_eq!(f.predict(&[1.0, 0.0], &[0.5]).unwrap(), Label::Plus);
        assert_eq!(f.predict(&[-1.0, 0.0], &[0.5]).unwrap(), Label::Minus);
        // orientation is read through its sign
        assert_eq!(f.predict(&[-0.2, 0.0], &[0.5]).unwrap(), Label::Minus);
        // on the boundary sgn(0) = +1 for both orientations
        assert_eq!(f.predict(&[1.0, 0.5], &[0.5]).unwrap(), Label::Plus);
        assert_eq!(f.predict(&[-1.0, 0.5], &[0.5]).unwrap(), Label::Plus);
    }

    #[test]
    fn perceptron_sign() {
        let f = ModelFamily::Perceptron { inputs: 2 };
        assert_eq!(f.predict(&[1.0, -1.0, 0.0], &[-1.0, 1.0]).unwrap(), Label::Minus);
        assert_eq!(f.predict(&[1.0, -1.0, 0.0], &[1.0, -1.0]).unwrap(), Label::Plus);
    }

    #[test]
    fn dimension_mismatch_is_domain_error() {
        let f = ModelFamily::Perceptron { inputs: 2 };
        assert!(f.predict(&[1.0, 0.0], &[1.0, 1.0]).is_err());
        assert!(f.predict(&[1.0, 0.0, 0.0], &[1.0]).is_err());
        let d = pts(&[(0.5, 1)]);
        assert!(f.accuracy(&[1.0, 0.0, 0.0], &d).is_err());
    }

    #[test]
    fn negate_examples() {
        assert_eq!(negate_params(&[1.0, 0.3]), vec![-1.0, -0.3]);
        assert_eq!(negate_params(&[1.0, -2.0, 0.5]), vec![-1.0, 2.0, -0.5]);
        let zero = negate_params(&[0.0, 0.0]);
        assert!(zero.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn accuracy_counts() {
        let f = ModelFamily::Threshold1D;
        let d = pts(&[(0.5, 1), (-0.5, -1)]);
        assert_eq!(f.accuracy(&[1.0, 0.0], &d).unwrap(), 1.0);
        assert_eq!(f.accuracy(&[-1.0, 0.0], &d).unwrap(), 0.0);
        let d4 = pts(&[(0.5, 1), (-0.5, -1), (1.5, 1), (-1.5, 1)]);
        assert_eq!(f.accuracy(&[1.0, 0.0], &d4).unwrap(), 0.75);
    }

    #[test]
    fn majority_constant_is_at_least_half() {
        let d = pts(&[(0.1, 1), (0.2, 1), (0.3, -1), (-2.0, 1), (4.0, -1)]);
        let plus = d.points().iter().filter(|p| p.y == Label::Plus).count();
        // a threshold below every point predicts the constant +1
        let constant_plus = ModelFamily::Threshold1D.accuracy(&[1.0, -10.0], &d).unwrap();
        let constant_minus = ModelFamily::Threshold1D.accuracy(&[-1.0, -10.0], &d).unwrap();
        assert_eq!(constant_plus, plus as f64 / 5.0);
        assert!(constant_plus.max(constant_minus) >= 0.5);
    }

    #[test]
    fn mlp_parameter_count() {
        let f = ModelFamily::Mlp2Hidden { inputs: 2, hidden: [3, 2] };
        assert_eq!(f.parameter_count(), 6 + 6 + 2);
        assert!(ModelFamily::Mlp2Hidden { inputs: 2, hidden: [0, 2] }.validate().is_err());
    }

    fn finite() -> impl Strategy<Value = f64> {
        -3.0f64..3.0
    }

    proptest! {
        #[test]
        fn perceptron_point_symmetric(theta in proptest::collection::vec(finite(), 4), x in proptest::collection::vec(finite(), 3)) {
            let f = ModelFamily::Perceptron { inputs: 3 };
            let act = theta[..3].iter().zip(&x).map(|(w, v)| w * v).sum::<f64>() + theta[3];
            prop_assume!(act.abs() > 1e-9);
            prop_assert_eq!(f.predict(&negate_params(&theta), &x).unwrap(), -f.predict(&theta, &x).unwrap());
        }

        #[test]
        fn mlp_point_symmetric(theta in proptest::collection::vec(finite(), 2 * 3 + 3 * 2 + 2), x in proptest::collection::vec(finite(), 2)) {
            let f = ModelFamily::Mlp2Hidden { inputs: 2, hidden: [3, 2] };
            let y = f.predict(&theta, &x).unwrap();
            let y_neg = f.predict(&negate_params(&theta), &x).unwrap();
            prop_assume!(f.score_unchecked(&theta, &x).abs() > 1e-9);
            prop_assert_eq!(y_neg, -y);
        }

        #[test]
        fn accuracy_complement_off_surface(theta in proptest::collection::vec(finite(), 3), raw in proptest::collection::vec((finite(), finite(), any::<bool>()), 1..20)) {
            let f = ModelFamily::Perceptron { inputs: 2 };
            let points: Vec<LabeledPoint> = raw.iter()
                .map(|&(a, b, plus)| LabeledPoint::new(vec![a, b], if plus { Label::Plus } else { Label::Minus }).unwrap())
                .collect();
            let d = Dataset::new(points).unwrap();
            prop_assume!(d.points().iter().all(|p| (theta[0] * p.x[0] + theta[1] * p.x[1] + theta[2]).abs() > 1e-9));
            let a = f.accuracy(&theta, &d).unwrap();
            let a_neg = f.accuracy(&negate_params(&theta), &d).unwrap();
            prop_assert!((0.0..=1.0).contains(&a));
            prop_assert!((a + a_neg - 1.0).abs() < 1e-12);
        }
    }
}
