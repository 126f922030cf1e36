//! Acceptance suite: one PASS/FAIL line per criterion. Runs as a plain
//! binary (no libtest harness) so the lines always reach the console.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command as Process;
use std::time::{Duration, Instant};

use qens_cli::config::{Fig6Config, Fig7Config};
use qens_cli::experiments::{fig6, fig7};
use qens_cli::RunContext;
use qens_core::analytic::{
    decision_boundary, expectation_closed_equal_sigma, expectation_quadrature, ClassDensity, DecisionProblem1D,
};
use qens_core::committee::{condorcet_curve, condorcet_error};
use qens_core::datagen::{gaussian_1d_pair, gaussian_blobs, BlobSpec, CounterRng};
use qens_core::model::{Dataset, Interval, Label, LabeledPoint, ModelFamily, ParameterGrid};
use qens_core::sim::{
    accuracy_zero_probabilities, apply_accuracy_rotation_exact, apply_accuracy_rotation_sequential, apply_classifier,
    grover_filter_from_counts, grover_success_probability, measure_label_distribution, postselect_accuracy_zero,
    prepare_uniform, sequential_acceptance, RegisterLayout, DEFAULT_QUBIT_CAP,
};
use qens_core::weighting::{
    effective_expectation, effective_expectation_signed_half, grid_accuracies, grid_correct_counts, EnsembleOracle,
    WeightScheme, Weighting,
};

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict { passed, detail: detail.into() }
}

// ---------------------------------------------------------------------------
// criteria 1 and 2

/// Worst deviations seen by one pipeline run.
#[derive(Default, Clone, Copy)]
struct Gaps {
    weights: f64,
    labels: f64,
    acceptance: f64,
    runs: usize,
}

impl Gaps {
    fn merge(&mut self, o: Gaps) {
        self.weights = self.weights.max(o.weights);
        self.labels = self.labels.max(o.labels);
        self.acceptance = self.acceptance.max(o.acceptance);
        self.runs += o.runs;
    }
}

fn pipeline(family: &ModelFamily, grid: &ParameterGrid, data: &Dataset, queries: &[Vec<f64>]) -> Gaps {
    let accuracies = grid_accuracies(family, grid, data).unwrap();
    let total: f64 = accuracies.iter().sum();
    if total == 0.0 {
        return Gaps::default();
    }
    let layout = RegisterLayout::new(grid.register_bits().unwrap(), 0).unwrap();
    let state = apply_accuracy_rotation_exact(prepare_uniform(layout, DEFAULT_QUBIT_CAP).unwrap(), &accuracies).unwrap();
    let (state, report) = postselect_accuracy_zero(state).unwrap();
    let mut gaps = Gaps { runs: 1, ..Gaps::default() };
    gaps.acceptance = (report.acceptance_probability - total / accuracies.len() as f64).abs();
    gaps.weights =
        state.param_distribution().iter().zip(&accuracies).map(|(p, a)| (p - a / total).abs()).fold(0.0, f64::max);
    let oracle = EnsembleOracle::new(family, grid, data, Weighting::new(WeightScheme::Accuracy)).unwrap();
    for q in queries {
        let (minus, plus) = measure_label_distribution(&apply_classifier(state.clone(), family, grid, q).unwrap());
        let classical = oracle.decide(q).unwrap();
        gaps.labels = gaps.labels.max((plus - classical.p_plus).abs()).max((minus - classical.p_minus).abs());
    }
    gaps
}

struct Fixture {
    data: Dataset,
    families: Vec<ModelFamily>,
}

fn fixtures() -> Vec<Fixture> {
    let one_d = gaussian_1d_pair(-1.0, 0.5, 1.0, 0.8, 30, 101).unwrap();
    let two_d = gaussian_blobs(&BlobSpec {
        mean_minus: vec![-1.0, 1.0],
        mean_plus: vec![1.0, -1.0],
        sigma: 1.0,
        samples_minus: 25,
        samples_plus: 25,
        seed: 202,
    })
    .unwrap();
    let rng = CounterRng::new(303);
    let three_d = Dataset::new(
        (0..40u64)
            .map(|i| {
                let x: Vec<f64> = (0..3).map(|d| rng.normal_at(4 * i + d)).collect();
                let y = if x[0] - 0.5 * x[2] + 0.3 * rng.normal_at(4 * i + 3) > 0.0 { Label::Plus } else { Label::Minus };
                LabeledPoint::new(x, y).unwrap()
            })
            .collect(),
    )
    .unwrap();
    vec![
        Fixture { data: one_d, families: vec![ModelFamily::Threshold1D, ModelFamily::Perceptron { inputs: 1 }] },
        Fixture {
            data: two_d,
            families: vec![ModelFamily::Perceptron { inputs: 2 }, ModelFamily::Mlp2Hidden { inputs: 2, hidden: [1, 1] }],
        },
        Fixture {
            data: three_d,
            families: vec![ModelFamily::Perceptron { inputs: 3 }, ModelFamily::Mlp2Hidden { inputs: 3, hidden: [1, 1] }],
        },
    ]
}

fn intervals_for(family: &ModelFamily, variant: usize) -> Vec<Interval> {
    let p = family.parameter_count();
    match (family, variant) {
        (ModelFamily::Threshold1D, 0) => vec![Interval::new(-1.0, 1.0).unwrap(), Interval::new(-2.0, 2.0).unwrap()],
        (ModelFamily::Threshold1D, _) => vec![Interval::new(0.2, 1.0).unwrap(), Interval::new(-1.5, 0.7).unwrap()],
        (_, 0) => vec![Interval::new(-1.0, 1.0).unwrap(); p],
        (_, _) => (0..p).map(|j| Interval::new(-1.0 - 0.1 * j as f64, 0.6 + 0.2 * j as f64).unwrap()).collect(),
    }
}

fn queries(rng: CounterRng, dim: usize, n: usize) -> Vec<Vec<f64>> {
    (0..n).map(|i| (0..dim).map(|d| 1.5 * rng.normal_at((i * dim + d) as u64)).collect()).collect()
}

fn equivalence() -> (Gaps, Duration) {
    let start = Instant::now();
    let mut gaps = Gaps::default();
    let rng = CounterRng::new(1);
    for (f, fixture) in fixtures().iter().enumerate() {
        let qs = queries(rng.split(f as u64), fixture.data.dim(), 4);
        for family in &fixture.families {
            let p = family.parameter_count() as u32;
            for bits in (1..=12 / p).filter(|b| b * p <= 12) {
                for variant in 0..2 {
                    let grid = ParameterGrid::new(intervals_for(family, variant), bits).unwrap();
                    gaps.merge(pipeline(family, &grid, &fixture.data, &qs));
                }
            }
        }
    }
    // 20 random grids between 2^12 and 2^16 models
    let fx = fixtures();
    let pick = CounterRng::new(2);
    for g in 0..20u64 {
        let fixture = &fx[(pick.at(4 * g) % 3) as usize];
        let family = &fixture.families[(pick.at(4 * g + 1) % 2) as usize];
        let p = family.parameter_count() as u32;
        let min_bits = 12u32.div_ceil(p);
        let max_bits = 16 / p;
        let bits = min_bits.min(max_bits) + (pick.at(4 * g + 2) % (max_bits.saturating_sub(min_bits) as u64 + 1)) as u32;
        let r = pick.split(g);
        let intervals = (0..p as u64)
            .map(|j| {
                let lo = -2.0 * r.uniform_at(2 * j);
                Interval::new(lo, lo + 0.5 + 2.0 * r.uniform_at(2 * j + 1)).unwrap()
            })
            .collect();
        let intervals = if *family == ModelFamily::Threshold1D {
            vec![Interval::new(-1.0, 1.0).unwrap(), Interval::new(-2.0, 2.0).unwrap()]
        } else {
            intervals
        };
        let grid = ParameterGrid::new(intervals, bits).unwrap();
        let qs = queries(r.split(99), fixture.data.dim(), 2);
        gaps.merge(pipeline(family, &grid, &fixture.data, &qs));
    }
    (gaps, start.elapsed())
}

// ---------------------------------------------------------------------------

fn point_symmetry() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut mismatched = 0;
    let mut checked = 0;
    let blobs = |dim: usize, seed: u64| {
        gaussian_blobs(&BlobSpec {
            mean_minus: vec![-0.7; dim],
            mean_plus: vec![0.7; dim],
            sigma: 1.0,
            samples_minus: 20,
            samples_plus: 20,
            seed,
        })
        .unwrap()
    };
    let cases = [
        (ModelFamily::Perceptron { inputs: 2 }, ParameterGrid::uniform(3, -1.0, 1.0, 3).unwrap(), blobs(2, 5)),
        // single-unit hidden layers with an even level count: no grid model
        // outputs an exact zero, so every {θ, -θ} pair stays off the tie set
        (
            ModelFamily::Mlp2Hidden { inputs: 2, hidden: [1, 1] },
            ParameterGrid::uniform(4, -1.0, 1.0, 3).unwrap(),
            blobs(2, 6),
        ),
        (
            ModelFamily::Mlp2Hidden { inputs: 3, hidden: [1, 1] },
            ParameterGrid::uniform(5, -1.0, 1.0, 2).unwrap(),
            blobs(3, 7),
        ),
    ];
    let rng = CounterRng::new(8);
    for (c, (family, grid, data)) in cases.iter().enumerate() {
        let oracle = EnsembleOracle::new(family, grid, data, Weighting::new(WeightScheme::Accuracy)).unwrap();
        let e = grid.size() as f64;
        for q in queries(rng.split(c as u64), data.dim(), 100) {
            let full = oracle.decide(&q).unwrap().raw_score / e;
            let eff = effective_expectation(family, grid, data, &q).unwrap();
            let signed = effective_expectation_signed_half(family, grid, data, &q).unwrap();
            worst = worst.max((full - 2.0 * eff).abs()).max((eff - signed).abs());
            if Label::from_sign(full) != Label::from_sign(eff) {
                mismatched += 1;
            }
            checked += 1;
        }
    }
    verdict(
        worst < 1e-10 && mismatched == 0,
        format!("{checked} queries over 3 grids, max |full - 2·effective| {worst:.1e}, label mismatches {mismatched}"),
    )
}

fn analytic_boundary() -> Verdict {
    let gauss = DecisionProblem1D::gaussians(-1.0, 0.5, 1.0, 0.5).unwrap();
    let b = decision_boundary(&gauss).unwrap();
    let gap = (0..241)
        .map(|i| -3.0 + 0.025 * i as f64)
        .map(|x| (expectation_closed_equal_sigma(&gauss, x).unwrap() - expectation_quadrature(&gauss, x).unwrap()).abs())
        .fold(0.0, f64::max);
    let boxes = DecisionProblem1D::new(ClassDensity::boxcar(-1.0, 2.0).unwrap(), ClassDensity::boxcar(1.0, 2.0).unwrap());
    let laplace = DecisionProblem1D::new(ClassDensity::laplace(-1.0, 0.5).unwrap(), ClassDensity::laplace(1.0, 0.5).unwrap());
    let bb = decision_boundary(&boxes).unwrap();
    let bl = decision_boundary(&laplace).unwrap();
    verdict(
        b.abs() < 1e-6 && gap < 1e-6 && bb.abs() < 1e-6 && bl.abs() < 1e-6,
        format!("gaussian {b:.1e}, box {bb:.1e}, laplace {bl:.1e}, closed-form gap {gap:.1e}"),
    )
}

fn asymmetric_case(dir: &Path) -> Verdict {
    let ctx = RunContext { out_dir: dir.join("fig7"), seed: None, svg: false };
    let outcome = fig7::run(&Fig7Config::default(), &ctx).unwrap();
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(ctx.path("fig7.json")).unwrap()).unwrap();
    let ex2 = &report["examples"][1];
    let boundary = ex2["boundary"].as_f64().unwrap_or(f64::NAN);
    let asymmetry = ex2["accuracy_asymmetry"].as_f64().unwrap_or(0.0);
    let exported = std::fs::read_to_string(ctx.path("fig7_asymmetry.csv")).is_ok_and(|s| s.contains("example2"));
    verdict(
        boundary > 0.0 && asymmetry > 0.0 && exported && outcome.passed(),
        format!("boundary {boundary:.6}, max accuracy asymmetry {asymmetry:.4}, exported {exported}"),
    )
}

fn condorcet() -> Verdict {
    let start = Instant::now();
    let at_1001 = condorcet_error(1001, 0.6).unwrap();
    let monotone = [0.55, 0.6, 0.7]
        .iter()
        .all(|&p| condorcet_curve(p, 2001).unwrap().windows(2).all(|w| w[1].1 <= w[0].1));
    let mut worst: f64 = 0.0;
    for e in (1..=1001u64).step_by(10) {
        for i in 0..=20 {
            let p = i as f64 / 20.0;
            worst = worst.max((condorcet_error(e, p).unwrap() + condorcet_error(e, 1.0 - p).unwrap() - 1.0).abs());
        }
    }
    let elapsed = start.elapsed();
    verdict(
        at_1001 < 1e-6 && monotone && worst < 1e-12 && elapsed < Duration::from_secs(5),
        format!(
            "error(1001, 0.6) = {at_1001:.2e}, monotone {monotone}, complement gap {worst:.1e}, {:.2}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn perceptron_regions(dir: &Path) -> Verdict {
    let start = Instant::now();
    let ctx = RunContext { out_dir: dir.join("fig6"), seed: None, svg: false };
    let config = Fig6Config::default();
    let outcome = fig6::run(&config, &ctx).unwrap();
    let elapsed = start.elapsed();
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(ctx.path("fig6.json")).unwrap()).unwrap();
    let crossings = report["crossings"].as_array().map(|c| c.len()).unwrap_or(0);
    let distance = report["crossings"][0]["distance_to_midpoint"].as_f64().unwrap_or(f64::NAN);
    verdict(
        outcome.passed() && report["models"] == 8000 && elapsed < Duration::from_secs(60),
        format!(
            "8000 models, means labelled {}/{}, {crossings} crossing(s) at {distance:.4} from midpoint, {:.1}s",
            report["label_at_mean_minus"],
            report["label_at_mean_plus"],
            elapsed.as_secs_f64()
        ),
    )
}

fn grover() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for e in [4usize, 16, 256] {
        for k in [1, e / 4, e / 2] {
            // M = 2 training points; marked models get both right
            let counts: Vec<u32> = (0..e).map(|i| if (i * 7 + 3) % e < k { 2 } else { (i % 2) as u32 }).collect();
            let marked = counts.iter().filter(|&&c| c == 2).count();
            assert_eq!(marked, k);
            for iterations in 0..=4u64 {
                let out = grover_filter_from_counts(&counts, 2, Some(iterations)).unwrap();
                let closed = grover_success_probability(iterations, k as u64, e as u64);
                worst = worst.max((out.marked_probability - closed).abs());
                cases += 1;
            }
        }
    }
    let textbook = grover_filter_from_counts(&[0, 2, 1, 0], 2, Some(1)).unwrap().marked_probability;
    verdict(
        worst < 1e-10 && (textbook - 1.0).abs() < 1e-10,
        format!("{cases} runs, max gap to closed form {worst:.1e}, E=4 K=1 k=1 probability {textbook:.12}"),
    )
}

fn sequential() -> Verdict {
    let family = ModelFamily::Threshold1D;
    let grid = ParameterGrid::new(vec![Interval::new(-1.0, 1.0).unwrap(), Interval::new(-4.0, 4.0).unwrap()], 3).unwrap();
    let data = Dataset::new(
        (0..8)
            .map(|i| {
                let x = -3.5 + i as f64;
                LabeledPoint::new(vec![x], if x > 0.0 { Label::Plus } else { Label::Minus }).unwrap()
            })
            .collect(),
    )
    .unwrap();
    let counts = grid_correct_counts(&family, &grid, &data).unwrap();
    let mut worst: f64 = 0.0;
    let mut monotone = true;
    for delta in [std::f64::consts::PI / 32.0, 0.05, 0.01] {
        let layout = RegisterLayout::new(grid.register_bits().unwrap(), 0).unwrap();
        let state = prepare_uniform(layout, DEFAULT_QUBIT_CAP).unwrap();
        let state = apply_accuracy_rotation_sequential(state, &data, &family, &grid, delta).unwrap();
        let p0 = accuracy_zero_probabilities(&state);
        let mut by_count: BTreeMap<u32, f64> = BTreeMap::new();
        for (&c, &p) in counts.iter().zip(&p0) {
            worst = worst.max((p - sequential_acceptance(c, 8, delta)).abs());
            by_count.insert(c, p);
        }
        monotone &= by_count.values().collect::<Vec<_>>().windows(2).all(|w| w[1] > w[0]);
    }
    let distinct: std::collections::BTreeSet<u32> = counts.iter().copied().collect();
    verdict(
        worst < 1e-12 && monotone && distinct.len() >= 5,
        format!("counts {distinct:?}, strictly monotone {monotone}, max gap to cos² {worst:.1e}"),
    )
}

fn determinism(dir: &Path) -> Verdict {
    let exe = env!("CARGO_BIN_EXE_qens");
    let commands = ["fig2", "fig4", "fig5", "fig6", "fig7", "classify", "grover"];
    let mut differing = Vec::new();
    for cmd in commands {
        let mut runs = Vec::new();
        for (k, threads) in [(0, "1"), (1, "3"), (2, "3")] {
            let out = dir.join(format!("det_{cmd}_{k}"));
            let status = Process::new(exe)
                .args([cmd, "--threads", threads, "--out"])
                .arg(&out)
                .output()
                .expect("qens runs");
            assert!(status.status.success(), "{cmd}: {}", String::from_utf8_lossy(&status.stderr));
            let mut files: BTreeMap<String, Vec<u8>> = BTreeMap::new();
            for entry in std::fs::read_dir(&out).unwrap() {
                let path = entry.unwrap().path();
                files.insert(path.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&path).unwrap());
            }
            runs.push(files);
        }
        if runs[0] != runs[1] || runs[1] != runs[2] || runs[0].is_empty() {
            differing.push(cmd);
        }
    }
    verdict(
        differing.is_empty(),
        format!("{} commands run at 1, 3 and 3 threads, differing: {differing:?}", commands.len()),
    )
}

fn main() {
    let dir = tempfile::tempdir().unwrap();
    let (gaps, equivalence_time) = equivalence();
    let results = [
        (
            "quantum/classical equivalence",
            verdict(
                gaps.weights < 1e-10 && gaps.labels < 1e-10 && equivalence_time < Duration::from_secs(60),
                format!(
                    "{} grids, max weight gap {:.1e}, max label gap {:.1e}, {:.1}s",
                    gaps.runs,
                    gaps.weights,
                    gaps.labels,
                    equivalence_time.as_secs_f64()
                ),
            ),
        ),
        (
            "acceptance probability",
            verdict(gaps.acceptance < 1e-12, format!("{} fixtures, max |p_acc - mean a| {:.1e}", gaps.runs, gaps.acceptance)),
        ),
        ("point-symmetry reduction", point_symmetry()),
        ("analytic boundary", analytic_boundary()),
        ("asymmetric case", asymmetric_case(dir.path())),
        ("condorcet", condorcet()),
        ("2d perceptron regions", perceptron_regions(dir.path())),
        ("grover filter", grover()),
        ("sequential rotation", sequential()),
        ("determinism", determinism(dir.path())),
    ];
    let mut failed = 0;
    for (i, (name, v)) in results.iter().enumerate() {
        println!("[{}] criterion {:>2} {name}: {}", if v.passed { "PASS" } else { "FAIL" }, i + 1, v.detail);
        failed += usize::from(!v.passed);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
