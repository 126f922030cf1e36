//! Integrand decomposition at a fixed query point for several class pairs.

use serde::Serialize;

use qens_core::analytic::{
    accuracy_asymmetry, accuracy_continuous, decision_boundary, default_w0_grid, expectation_quadrature,
    integrand_decomposition, write_series_csv,
};
use qens_core::model::Label;

use super::fig5::matched;
use crate::config::{Fig7Config, ProblemSpec};
use crate::error::{usage, Result};
use crate::output::{Check, Outcome, RunContext};
use crate::svg::{line_chart, Series};

#[derive(Debug, Serialize)]
struct ExampleReport {
    example: usize,
    problem: ProblemSpec,
    expectation: f64,
    integrand_integral: f64,
    boundary: Option<f64>,
    boundary_shift: Option<f64>,
    accuracy_asymmetry: f64,
}

#[derive(Debug, Serialize)]
struct Report<'a> {
    command: &'static str,
    config: &'a Fig7Config,
    examples: Vec<ExampleReport>,
    checks: &'a [Check],
}

pub fn run(config: &Fig7Config, ctx: &RunContext) -> Result<Outcome> {
    if config.examples.is_empty() || !(config.w0_step > 0.0) || config.asymmetry_points < 2 {
        return usage("need at least one example, a positive w0 step and two asymmetry points");
    }
    let mut outcome = Outcome::new("fig7");
    let offsets: Vec<f64> = (0..config.asymmetry_points)
        .map(|i| config.asymmetry_half_width * i as f64 / (config.asymmetry_points - 1) as f64)
        .collect();
    let mut asymmetry_series: Vec<(String, Vec<f64>)> = Vec::new();
    let mut examples = Vec::new();

    for (k, spec) in config.examples.iter().enumerate() {
        let n = k + 1;
        let problem = spec.build()?;
        let grid = default_w0_grid(&problem, config.w0_step)?;
        let curves = integrand_decomposition(&problem, config.x_tilde, &grid)?;
        outcome.file(ctx.write_csv(&format!("fig7_example{n}.csv"), |buf| curves.write_csv(buf))?);
        outcome.maybe_file(ctx.write_svg(&format!("fig7_example{n}.svg"), || {
            let s: Vec<Series> = curves.series().iter().map(|(name, y)| Series { name, x: &curves.w0, y }).collect();
            line_chart(&format!("Example {n}: decomposition at x = {}", config.x_tilde), "w0", "value", &s)
        })?);

        let mid = problem.midpoint();
        asymmetry_series.push((
            format!("example{n}"),
            offsets
                .iter()
                .map(|d| {
                    (accuracy_continuous(&problem, mid + d, Label::Plus) - accuracy_continuous(&problem, mid - d, Label::Plus))
                        .abs()
                })
                .collect(),
        ));

        let expectation = expectation_quadrature(&problem, config.x_tilde)?;
        let integral = curves.integrand_integral();
        let asymmetry = accuracy_asymmetry(&problem, config.asymmetry_half_width, config.asymmetry_points);
        let boundary = match decision_boundary(&problem) {
            Ok(b) => Some(b),
            Err(qens_core::Error::NoBoundary(_)) => None,
            Err(e) => return Err(e.into()),
        };
        outcome.checks.push(Check::new(
            &format!("example{n}_integral_matches_expectation"),
            (integral - expectation).abs() < 1e-4,
            format!("trapezoid {integral:.8} vs quadrature {expectation:.8}"),
        ));
        if matched(&problem.density_minus, &problem.density_plus) {
            outcome.checks.push(Check::new(&format!("example{n}_accuracy_symmetric"), asymmetry < 1e-12, format!("{asymmetry:e}")));
            outcome.checks.push(Check::new(
                &format!("example{n}_boundary_at_midpoint"),
                boundary.is_some_and(|b| (b - mid).abs() < 1e-6),
                format!("{boundary:?}"),
            ));
        } else {
            outcome.checks.push(Check::new(&format!("example{n}_accuracy_asymmetric"), asymmetry > 1e-6, format!("{asymmetry:e}")));
            let (minus, plus) = (&problem.density_minus, &problem.density_plus);
            if minus.scale() != plus.scale() {
                let flatter = if plus.scale() > minus.scale() { plus.location() } else { minus.location() };
                let toward = boundary.is_some_and(|b| (b - mid) * (flatter - mid) > 0.0);
                outcome.checks.push(Check::new(
                    &format!("example{n}_boundary_toward_flatter_class"),
                    toward,
                    format!("boundary {boundary:?}, midpoint {mid}"),
                ));
            }
        }
        examples.push(ExampleReport {
            example: n,
            problem: *spec,
            expectation,
            integrand_integral: integral,
            boundary,
            boundary_shift: boundary.map(|b| b - mid),
            accuracy_asymmetry: asymmetry,
        });
    }

    let series: Vec<(&str, &[f64])> = asymmetry_series.iter().map(|(n, v)| (n.as_str(), v.as_slice())).collect();
    outcome.file(ctx.write_csv("fig7_asymmetry.csv", |buf| write_series_csv(buf, "offset", &offsets, &series))?);

    let report = Report { command: "fig7", config, examples, checks: &outcome.checks };
    outcome.file(ctx.write_json("fig7.json", &report)?);
    Ok(outcome)
}
