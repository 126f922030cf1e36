//! Majority-vote committees of independent members: Condorcet error
//! curves, odds ratios and the pairwise growth condition.

use rayon::prelude::*;
use libm::lgamma;

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum CommitteeSpec {
    Homogeneous { size: u64, accuracy: f64 },
    Heterogeneous(Vec<f64>),
}

impl CommitteeSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            CommitteeSpec::Homogeneous { size, accuracy } => {
                check_size(*size)?;
                check_accuracy(*accuracy)
            }
            CommitteeSpec::Heterogeneous(accuracies) => {
                check_size(accuracies.len() as u64)?;
                accuracies.iter().try_for_each(|&a| check_accuracy(a))
            }
        }
    }

    pub fn size(&self) -> u64 {
        match self {
            CommitteeSpec::Homogeneous { size, .. } => *size,
            CommitteeSpec::Heterogeneous(a) => a.len() as u64,
        }
    }

    /// Probability that more than half of the members are wrong.
    pub fn majority_error(&self) -> Result<f64> {
        self.validate()?;
        match self {
            CommitteeSpec::Homogeneous { size, accuracy } => condorcet_error(*size, *accuracy),
            CommitteeSpec::Heterogeneous(a) => majority_error(a),
        }
    }
}

fn check_size(size: u64) -> Result<()> {
    if size == 0 || size.is_multiple_of(2) {
        return domain(format!("committee size must be odd, got {size}"));
    }
    Ok(())
}

fn check_accuracy(a: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&a) {
        return domain(format!("accuracy must lie in [0, 1], got {a}"));
    }
    Ok(())
}

fn ln_binomial(n: u64, k: u64) -> f64 {
    let (lo, hi) = (k.min(n - k), k.max(n - k));
    lgamma(n as f64 + 1.0) - lgamma(lo as f64 + 1.0) - lgamma(hi as f64 + 1.0)
}

/// `Σ_{k > E/2} C(E, k) p^(E-k) (1-p)^k` for odd `E`, with every term
/// formed in log space. The tail is divided by the computed total mass,
/// which cancels the rounding of the shared log-gamma offset.
pub fn condorcet_error(size: u64, p: f64) -> Result<f64> {
    check_size(size)?;
    check_accuracy(p)?;
    if p == 1.0 {
        return Ok(0.0);
    }
    if p == 0.0 {
        return Ok(1.0);
    }
    let (ln_p, ln_q) = (p.ln(), (1.0 - p).ln());
    let logs: Vec<f64> = (0..=size)
        .map(|k| ln_binomial(size, k) + (size - k) as f64 * ln_p + k as f64 * ln_q)
        .collect();
    let peak = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let terms: Vec<f64> = logs.iter().map(|l| (l - peak).exp()).collect();
    let half = (size / 2 + 1) as usize;
    let head: f64 = terms[..half].iter().sum();
    let tail: f64 = terms[half..].iter().sum();
    Ok(tail / (head + tail))
}

/// Majority error for members with individual accuracies, by dynamic
/// programming over the number of wrong votes.
pub fn majority_error(accuracies: &[f64]) -> Result<f64> {
    check_size(accuracies.len() as u64)?;
    let mut wrong = vec![0.0; accuracies.len() + 1];
    wrong[0] = 1.0;
    for (i, &a) in accuracies.iter().enumerate() {
        check_accuracy(a)?;
        for k in (0..=i + 1).rev() {
            let stay = wrong[k] * a;
            let moved = if k > 0 { wrong[k - 1] * (1.0 - a) } else { 0.0 };
            wrong[k] = stay + moved;
        }
    }
    Ok(wrong[accuracies.len() / 2 + 1..].iter().sum())
}

/// `a / (1 - a)`.
pub fn odds_ratio(a: f64) -> Result<f64> {
    if a == 1.0 {
        return Err(Error::Unbounded("odds ratio of a perfect member".into()));
    }
    check_accuracy(a)?;
    Ok(a / (1.0 - a))
}

/// Whether adding two members with accuracies `a1` and `a2` helps: their
/// joint odds `a1 a2 / ((1-a1)(1-a2))` must reach the best member's odds.
pub fn lam_suen_improves(a1: f64, a2: f64, members: &[f64]) -> Result<bool> {
    if members.is_empty() {
        return domain("ensemble must have at least one member");
    }
    for &a in [a1, a2].iter().chain(members) {
        if !(a > 0.0 && a < 1.0) {
            return domain(format!("accuracies must lie strictly inside (0, 1), got {a}"));
        }
    }
    let joint = odds_ratio(a1)? * odds_ratio(a2)?;
    let best = members.iter().map(|&a| a / (1.0 - a)).fold(f64::NEG_INFINITY, f64::max);
    Ok(joint >= best)
}

/// `(E, condorcet_error(E, p))` for every odd `E ≤ max_size`.
pub fn condorcet_curve(p: f64, max_size: u64) -> Result<Vec<(u64, f64)>> {
    check_accuracy(p)?;
    let sizes: Vec<u64> = (1..=max_size).step_by(2).collect();
    sizes.par_iter().map(|&e| Ok((e, condorcet_error(e, p)?))).collect()
}
