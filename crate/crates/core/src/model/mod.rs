//! Model families, parameter discretization, prediction and training accuracy.

mod dataset;
mod family;
mod grid;

use std::ops::Neg;

pub use dataset::{Dataset, LabeledPoint};
pub use family::{negate_params, ModelFamily};
pub use grid::{Interval, ParameterGrid};

/// Binary class label, `-1` or `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Minus,
    Plus,
}

impl Label {
    /// Sign of `value` with the convention `sgn(0) = +1`.
    #[inline]
    pub fn from_sign(value: f64) -> Self {
        if value >= 0.0 {
            Label::Plus
        } else {
            Label::Minus
        }
    }

    pub fn from_i64(value: i64) -> Option<Self> {
        match value {
            -1 => Some(Label::Minus),
            1 => Some(Label::Plus),
            _ => None,
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        match self {
            Label::Minus => -1.0,
            Label::Plus => 1.0,
        }
    }

    #[inline]
    pub fn as_i8(self) -> i8 {
        match self {
            Label::Minus => -1,
            Label::Plus => 1,
        }
    }
}

impl Neg for Label {
    type Output = Label;

    fn neg(self) -> Label {
        match self {
            Label::Minus => Label::Plus,
            Label::Plus => Label::Minus,
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_i8())
    }
}
