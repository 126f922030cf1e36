//! Centered effective weight against the log-odds weight.

use serde::Serialize;

use qens_core::analytic::write_series_csv;
use qens_core::weighting::{weight, WeightScheme};

use super::open_unit;
use crate::config::Fig4Config;
use crate::error::{usage, Result};
use crate::output::{Check, Outcome, RunContext};
use crate::svg::{line_chart, Series};

#[derive(Debug, Serialize)]
struct Report<'a> {
    command: &'static str,
    config: &'a Fig4Config,
    log_odds_at_084: f64,
    checks: &'a [Check],
}

pub fn run(config: &Fig4Config, ctx: &RunContext) -> Result<Outcome> {
    if config.points == 0 {
        return usage("points must be positive");
    }
    let mut outcome = Outcome::new("fig4");
    let a = open_unit(config.points);
    let centered: Vec<f64> = a.iter().map(|&a| weight(WeightScheme::EffectiveCentered, a)).collect::<qens_core::Result<_>>()?;
    let log_odds: Vec<f64> = a.iter().map(|&a| weight(WeightScheme::LogOdds, a)).collect::<qens_core::Result<_>>()?;
    outcome.file(ctx.write_csv("fig4_weights.csv", |buf| {
        write_series_csv(buf, "a", &a, &[("centered", &centered), ("log_odds", &log_odds)])
    })?);
    outcome.maybe_file(ctx.write_svg("fig4_weights.svg", || {
        line_chart(
            "Effective and log-odds weights",
            "a",
            "weight",
            &[Series { name: "a - 1/2", x: &a, y: &centered }, Series { name: "ln(a/(1-a))", x: &a, y: &log_odds }],
        )
    })?);

    let zero_at_half = weight(WeightScheme::EffectiveCentered, 0.5)? == 0.0 && weight(WeightScheme::LogOdds, 0.5)? == 0.0;
    outcome.checks.push(Check::new("both_zero_at_half", zero_at_half, ""));
    let signs = a
        .iter()
        .zip(centered.iter().zip(&log_odds))
        .filter(|(&a, _)| a != 0.5)
        .all(|(_, (c, l))| c.signum() == l.signum());
    outcome.checks.push(Check::new("signs_agree", signs, ""));
    let at_084 = weight(WeightScheme::LogOdds, 0.84)?;
    outcome.checks.push(Check::new("log_odds_at_0.84", (at_084 - 1.658228).abs() < 1e-6, format!("{at_084:.9}")));

    let report = Report { command: "fig4", config, log_odds_at_084: at_084, checks: &outcome.checks };
    outcome.file(ctx.write_json("fig4.json", &report)?);
    Ok(outcome)
}
