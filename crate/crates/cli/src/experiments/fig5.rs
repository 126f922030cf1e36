//! Expectation of the continuum threshold ensemble across query points,
//! with its zero crossing.

use serde::Serialize;

use qens_core::analytic::{
    decision_boundary, expectation_closed_equal_sigma, expectation_curve, expectation_quadrature, write_series_csv,
    ClassDensity,
};

use super::linspace_step;
use crate::config::Fig5Config;
use crate::error::{usage, Result};
use crate::output::{Check, Outcome, RunContext};
use crate::svg::{line_chart, Series};

#[derive(Debug, Serialize)]
struct Report<'a> {
    command: &'static str,
    config: &'a Fig5Config,
    boundary: Option<f64>,
    boundary_error: Option<String>,
    midpoint: f64,
    closed_form_max_gap: Option<f64>,
    checks: &'a [Check],
}

/// Same family and scale on both sides.
pub(crate) fn matched(a: &ClassDensity, b: &ClassDensity) -> bool {
    std::mem::discriminant(a) == std::mem::discriminant(b) && a.scale() == b.scale()
}

pub fn run(config: &Fig5Config, ctx: &RunContext) -> Result<Outcome> {
    if config.x_points < 2 || !(config.x_step > 0.0) {
        return usage("need at least two query points and a positive step");
    }
    let problem = config.problem.build()?;
    let mut outcome = Outcome::new("fig5");
    let xs = linspace_step(config.x_min, config.x_step, config.x_points);
    let quad = expectation_curve(&problem, &xs)?;
    let closed: Option<Vec<f64>> =
        xs.iter().map(|&x| expectation_closed_equal_sigma(&problem, x)).collect::<qens_core::Result<Vec<_>>>().ok();

    let mut series: Vec<(&str, &[f64])> = vec![("quadrature", &quad)];
    if let Some(c) = &closed {
        series.push(("closed_form", c));
    }
    outcome.file(ctx.write_csv("fig5_expectation.csv", |buf| write_series_csv(buf, "x", &xs, &series))?);
    outcome.maybe_file(ctx.write_svg("fig5_expectation.svg", || {
        let s: Vec<Series> = series.iter().map(|(n, y)| Series { name: n, x: &xs, y }).collect();
        line_chart("Ensemble expectation", "x", "E(x)", &s)
    })?);

    let midpoint = problem.midpoint();
    let (boundary, boundary_error) = match decision_boundary(&problem) {
        Ok(b) => (Some(b), None),
        Err(e @ qens_core::Error::NoBoundary(_)) => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    outcome.checks.push(Check::new(
        "boundary_found",
        boundary.is_some(),
        boundary.map_or_else(|| boundary_error.clone().unwrap_or_default(), |b| format!("{b:.12}")),
    ));
    if let (Some(b), true) = (boundary, matched(&problem.density_minus, &problem.density_plus)) {
        outcome.checks.push(Check::new("boundary_at_midpoint", (b - midpoint).abs() < 1e-6, format!("{:e}", b - midpoint)));
    }
    let at_minus = expectation_quadrature(&problem, problem.density_minus.location())?;
    let at_plus = expectation_quadrature(&problem, problem.density_plus.location())?;
    outcome.checks.push(Check::new(
        "class_sides",
        at_minus < 0.0 && at_plus > 0.0,
        format!("E(mean-)={at_minus:.6}, E(mean+)={at_plus:.6}"),
    ));
    let gap = closed.as_ref().map(|c| c.iter().zip(&quad).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
    if let Some(g) = gap {
        outcome.checks.push(Check::new("closed_form_matches_quadrature", g < 1e-6, format!("{g:e}")));
    }

    let report = Report {
        command: "fig5",
        config,
        boundary,
        boundary_error,
        midpoint,
        closed_form_max_gap: gap,
        checks: &outcome.checks,
    };
    outcome.file(ctx.write_json("fig5.json", &report)?);
    Ok(outcome)
}
