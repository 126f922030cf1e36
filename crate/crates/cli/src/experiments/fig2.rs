//! Condorcet error against committee size, and the odds ratio against
//! its square.

use serde::Serialize;

use qens_core::analytic::write_series_csv;
use qens_core::committee::{condorcet_curve, odds_ratio};

use super::open_unit;
use crate::config::Fig2Config;
use crate::error::{usage, Result};
use crate::output::{Check, Outcome, RunContext};
use crate::svg::{line_chart, Series};

#[derive(Debug, Serialize)]
struct CurveSummary {
    accuracy: f64,
    final_size: u64,
    final_error: f64,
    monotone: bool,
}

#[derive(Debug, Serialize)]
struct Report<'a> {
    command: &'static str,
    config: &'a Fig2Config,
    curves: Vec<CurveSummary>,
    odds_at_half: f64,
    checks: &'a [Check],
}

pub fn run(config: &Fig2Config, ctx: &RunContext) -> Result<Outcome> {
    if config.accuracies.is_empty() || config.accuracies.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return usage(format!("accuracies must be nonempty and lie in [0, 1], got {:?}", config.accuracies));
    }
    if config.max_size == 0 {
        return usage("max_size must be at least 1");
    }
    let mut outcome = Outcome::new("fig2");

    let curves: Vec<Vec<(u64, f64)>> =
        config.accuracies.iter().map(|&p| condorcet_curve(p, config.max_size)).collect::<qens_core::Result<_>>()?;
    let sizes: Vec<f64> = curves[0].iter().map(|&(e, _)| e as f64).collect();
    let errors: Vec<Vec<f64>> = curves.iter().map(|c| c.iter().map(|&(_, v)| v).collect()).collect();
    let names: Vec<String> = config.accuracies.iter().map(|p| format!("p={p}")).collect();
    let series: Vec<(&str, &[f64])> = names.iter().map(String::as_str).zip(errors.iter().map(Vec::as_slice)).collect();
    outcome.file(ctx.write_csv("fig2_condorcet.csv", |buf| write_series_csv(buf, "E", &sizes, &series))?);

    let a = open_unit(config.odds_points);
    let odds: Vec<f64> = a.iter().map(|&a| odds_ratio(a)).collect::<qens_core::Result<_>>()?;
    let squared: Vec<f64> = odds.iter().map(|o| o * o).collect();
    outcome.file(ctx.write_csv("fig2_odds.csv", |buf| {
        write_series_csv(buf, "a", &a, &[("odds_ratio", &odds), ("odds_ratio_squared", &squared)])
    })?);

    outcome.maybe_file(ctx.write_svg("fig2_condorcet.svg", || {
        let s: Vec<Series> = series.iter().map(|(n, y)| Series { name: n, x: &sizes, y }).collect();
        line_chart("Majority error vs committee size", "E", "error", &s)
    })?);
    outcome.maybe_file(ctx.write_svg("fig2_odds.svg", || {
        line_chart(
            "Odds ratio and its square",
            "a",
            "odds",
            &[Series { name: "a/(1-a)", x: &a, y: &odds }, Series { name: "(a/(1-a))^2", x: &a, y: &squared }],
        )
    })?);

    let summaries: Vec<CurveSummary> = config
        .accuracies
        .iter()
        .zip(&curves)
        .map(|(&p, c)| {
            let monotone = if p > 0.5 {
                c.windows(2).all(|w| w[1].1 <= w[0].1)
            } else if p < 0.5 {
                c.windows(2).all(|w| w[1].1 >= w[0].1)
            } else {
                c.iter().all(|&(_, e)| (e - 0.5).abs() < 1e-12)
            };
            let &(final_size, final_error) = c.last().expect("max_size >= 1");
            CurveSummary { accuracy: p, final_size, final_error, monotone }
        })
        .collect();

    for s in &summaries {
        outcome.checks.push(Check::new(
            &format!("curve_shape_p={}", s.accuracy),
            s.monotone,
            format!("error at E={} is {:e}", s.final_size, s.final_error),
        ));
        if s.accuracy == 0.6 && s.final_size >= 1001 {
            let at_1001 = curves[summaries.iter().position(|x| x.accuracy == 0.6).unwrap()][500].1;
            outcome.checks.push(Check::new("p=0.6_error_at_1001_below_1e-6", at_1001 < 1e-6, format!("{at_1001:e}")));
        }
    }
    let odds_at_half = odds_ratio(0.5)?;
    outcome.checks.push(Check::new("odds_ratio_at_half_is_one", odds_at_half == 1.0, format!("{odds_at_half}")));
    let square_dominance = a.iter().zip(odds.iter().zip(&squared)).all(|(&a, (&o, &s))| (s >= o) == (a >= 0.5));
    outcome.checks.push(Check::new("square_dominates_iff_a_at_least_half", square_dominance, ""));

    let report = Report { command: "fig2", config, curves: summaries, odds_at_half, checks: &outcome.checks };
    outcome.file(ctx.write_json("fig2.json", &report)?);
    Ok(outcome)
}
