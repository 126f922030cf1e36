//! Decision regions of an exhaustive two-input perceptron ensemble on two
//! Gaussian blobs.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use qens_core::model::{Interval, Label, ModelFamily, ParameterGrid};
use qens_core::weighting::{EnsembleOracle, WeightScheme, Weighting};

use super::linspace_step;
use crate::config::{DatasetSpec, Fig6Config};
use crate::error::{usage, Result};
use crate::output::{fmt_num, Check, Outcome, RunContext};
use crate::svg::label_raster;

#[derive(Debug, Serialize)]
struct Crossing {
    /// Position along the segment, 0 at the class -1 mean.
    t: f64,
    point: [f64; 2],
    distance_to_midpoint: f64,
}

#[derive(Debug, Serialize)]
struct Report<'a> {
    command: &'static str,
    config: &'a Fig6Config,
    seed: u64,
    models: u64,
    dataset_size: usize,
    label_at_mean_minus: i8,
    label_at_mean_plus: i8,
    crossings: Vec<Crossing>,
    /// Raster cell with the smallest `|raw score|` within 0.3 of the midpoint.
    smallest_score_near_midpoint: Option<[f64; 3]>,
    checks: &'a [Check],
}

fn class_means(spec: &DatasetSpec, ds: &qens_core::model::Dataset) -> ([f64; 2], [f64; 2]) {
    if let DatasetSpec::Blobs { mean_minus, mean_plus, .. } = spec {
        if mean_minus.len() == 2 && mean_plus.len() == 2 {
            return ([mean_minus[0], mean_minus[1]], [mean_plus[0], mean_plus[1]]);
        }
    }
    let mean = |label: Label| {
        let pts: Vec<_> = ds.points().iter().filter(|p| p.y == label).collect();
        let n = pts.len().max(1) as f64;
        [pts.iter().map(|p| p.x[0]).sum::<f64>() / n, pts.iter().map(|p| p.x[1]).sum::<f64>() / n]
    };
    (mean(Label::Minus), mean(Label::Plus))
}

pub fn run(config: &Fig6Config, ctx: &RunContext) -> Result<Outcome> {
    if config.raster_points == 0 || !(config.raster_step > 0.0) || config.segment_points < 2 {
        return usage("raster and segment need positive sizes");
    }
    let seed = ctx.seed_or(config.seed);
    let dataset = config.dataset.build(seed)?;
    if dataset.dim() != 2 {
        return usage(format!("the decision-region raster needs 2-D inputs, dataset has {}", dataset.dim()));
    }
    let family = ModelFamily::Perceptron { inputs: 2 };
    let interval = Interval::new(config.parameter_min, config.parameter_max).map_err(|e| crate::error::CliError::Usage(e.to_string()))?;
    let grid = ParameterGrid::with_levels(vec![interval; 3], config.levels)?;
    let oracle = EnsembleOracle::new(&family, &grid, &dataset, Weighting::new(WeightScheme::Accuracy))?;
    let mut outcome = Outcome::new("fig6");

    outcome.file(ctx.write_csv("fig6_dataset.csv", |buf| dataset.write_csv(buf))?);

    let axis = linspace_step(config.raster_min, config.raster_step, config.raster_points);
    let n = axis.len();
    let cells: Vec<(f64, Label)> = (0..n * n)
        .into_par_iter()
        .map(|k| oracle.decide(&[axis[k % n], axis[k / n]]).map(|d| (d.raw_score, d.label)))
        .collect::<qens_core::Result<_>>()?;
    outcome.file(ctx.write_csv("fig6_raster.csv", |buf| {
        writeln!(buf, "x1,x2,raw_score,label")?;
        for (k, (raw, label)) in cells.iter().enumerate() {
            writeln!(buf, "{},{},{},{}", fmt_num(axis[k % n]), fmt_num(axis[k / n]), fmt_num(*raw), label.as_i8())?;
        }
        Ok(())
    })?);
    outcome.maybe_file(ctx.write_svg("fig6_raster.svg", || {
        let labels: Vec<i8> = cells.iter().map(|(_, l)| l.as_i8()).collect();
        label_raster("Ensemble decision regions", &axis, &axis, &labels)
    })?);

    let (mu_minus, mu_plus) = class_means(&config.dataset, &dataset);
    let mid = [(mu_minus[0] + mu_plus[0]) / 2.0, (mu_minus[1] + mu_plus[1]) / 2.0];
    let span = ((mu_plus[0] - mu_minus[0]).powi(2) + (mu_plus[1] - mu_minus[1]).powi(2)).sqrt();
    let label_minus = oracle.decide(&mu_minus)?.label;
    let label_plus = oracle.decide(&mu_plus)?.label;

    let steps = config.segment_points - 1;
    let along = |t: f64| [mu_minus[0] + t * (mu_plus[0] - mu_minus[0]), mu_minus[1] + t * (mu_plus[1] - mu_minus[1])];
    let segment: Vec<(f64, f64)> = (0..=steps)
        .into_par_iter()
        .map(|j| {
            let t = j as f64 / steps as f64;
            oracle.decide(&along(t)).map(|d| (t, d.raw_score))
        })
        .collect::<qens_core::Result<_>>()?;
    let crossings: Vec<Crossing> = segment
        .windows(2)
        .filter(|w| Label::from_sign(w[0].1) != Label::from_sign(w[1].1))
        .map(|w| {
            let ((t0, s0), (t1, s1)) = (w[0], w[1]);
            let t = if s1 != s0 { t0 - s0 * (t1 - t0) / (s1 - s0) } else { 0.5 * (t0 + t1) };
            Crossing { t, point: along(t), distance_to_midpoint: (t - 0.5).abs() * span }
        })
        .collect();
    outcome.file(ctx.write_csv("fig6_segment.csv", |buf| {
        writeln!(buf, "t,x1,x2,raw_score")?;
        for &(t, raw) in &segment {
            let p = along(t);
            writeln!(buf, "{},{},{},{}", fmt_num(t), fmt_num(p[0]), fmt_num(p[1]), fmt_num(raw))?;
        }
        Ok(())
    })?);

    let smallest = cells
        .iter()
        .enumerate()
        .map(|(k, (raw, _))| (axis[k % n], axis[k / n], raw.abs()))
        .filter(|(x, y, _)| ((x - mid[0]).powi(2) + (y - mid[1]).powi(2)).sqrt() <= 0.3 + 1e-12)
        .min_by(|a, b| a.2.total_cmp(&b.2))
        .map(|(x, y, r)| [x, y, r]);

    outcome.checks.push(Check::new("mean_minus_labelled_minus", label_minus == Label::Minus, format!("{mu_minus:?}")));
    outcome.checks.push(Check::new("mean_plus_labelled_plus", label_plus == Label::Plus, format!("{mu_plus:?}")));
    let worst = crossings.iter().map(|c| c.distance_to_midpoint).fold(0.0, f64::max);
    outcome.checks.push(Check::new(
        "boundary_near_midpoint",
        !crossings.is_empty() && worst <= config.crossing_tolerance,
        format!("{} crossing(s), farthest {worst:.4} from the midpoint", crossings.len()),
    ));

    let report = Report {
        command: "fig6",
        config,
        seed,
        models: grid.size(),
        dataset_size: dataset.len(),
        label_at_mean_minus: label_minus.as_i8(),
        label_at_mean_plus: label_plus.as_i8(),
        crossings,
        smallest_score_near_midpoint: smallest,
        checks: &outcome.checks,
    };
    outcome.file(ctx.write_json("fig6.json", &report)?);
    Ok(outcome)
}
