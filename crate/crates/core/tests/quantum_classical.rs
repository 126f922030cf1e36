use qens_core::datagen::CounterRng;
use qens_core::model::{Dataset, Interval, Label, LabeledPoint, ModelFamily, ParameterGrid};
use qens_core::sim::{
    apply_accuracy_rotation_exact, apply_classifier, measure_label_distribution, postselect_accuracy_zero,
    prepare_uniform, RegisterLayout, DEFAULT_QUBIT_CAP,
};
use qens_core::weighting::{ensemble_decide, grid_accuracies, WeightScheme};

fn random_dataset(rng: CounterRng, dim: usize, n: usize) -> Dataset {
    let points = (0..n)
        .map(|i| {
            let x = (0..dim).map(|d| rng.normal_at((i * (dim + 1) + d) as u64)).collect();
            let y = if rng.uniform_at((i * (dim + 1) + dim) as u64) < 0.5 { Label::Minus } else { Label::Plus };
            LabeledPoint::new(x, y).unwrap()
        })
        .collect();
    Dataset::new(points).unwrap()
}

/// Runs the exact-rotation pipeline and checks it against the classical
/// accuracy-weighted vote.
fn check(family: &ModelFamily, grid: &ParameterGrid, data: &Dataset, query: &[f64]) {
    let accuracies = grid_accuracies(family, grid, data).unwrap();
    let total: f64 = accuracies.iter().sum();
    if total == 0.0 {
        return;
    }
    let layout = RegisterLayout::new(grid.register_bits().unwrap(), 0).unwrap();
    let state = prepare_uniform(layout, DEFAULT_QUBIT_CAP).unwrap();
    let state = apply_accuracy_rotation_exact(state, &accuracies).unwrap();
    let (state, report) = postselect_accuracy_zero(state).unwrap();
    let mean = total / accuracies.len() as f64;
    assert!((report.acceptance_probability - mean).abs() < 1e-12);

    let state = apply_classifier(state, family, grid, query).unwrap();
    assert!((state.norm_squared() - 1.0).abs() < 1e-12);
    for (p, a) in state.param_distribution().iter().zip(&accuracies) {
        assert!((p - a / total).abs() < 1e-10);
    }
    let (minus, plus) = measure_label_distribution(&state);
    let classical = ensemble_decide(family, grid, data, WeightScheme::Accuracy, query).unwrap();
    assert!((plus - classical.p_plus).abs() < 1e-10, "{plus} vs {}", classical.p_plus);
    assert!((minus - classical.p_minus).abs() < 1e-10);
}

#[test]
fn every_register_width_up_to_twelve_qubits() {
    let root = CounterRng::new(7);
    for bits in 1..=12u32 {
        let rng = root.split(bits as u64);
        // threshold grids for even widths, perceptrons where the width splits three ways
        if bits % 2 == 0 {
            let grid = ParameterGrid::new(
                vec![Interval::new(-1.0, 1.0).unwrap(), Interval::new(-2.0, 2.0).unwrap()],
                bits / 2,
            )
            .unwrap();
            let data = random_dataset(rng, 1, 15);
            check(&ModelFamily::Threshold1D, &grid, &data, &[rng.normal_at(10_000)]);
        }
        if bits % 3 == 0 {
            let grid = ParameterGrid::uniform(3, -1.0, 1.0, bits / 3).unwrap();
            let data = random_dataset(rng.split(1), 2, 20);
            let q = [rng.normal_at(20_000), rng.normal_at(20_001)];
            check(&ModelFamily::Perceptron { inputs: 2 }, &grid, &data, &q);
        }
        let grid = ParameterGrid::new(vec![Interval::new(-1.0, 1.0).unwrap(); bits as usize], 1).unwrap();
        let family = ModelFamily::Perceptron { inputs: bits as usize - 1 };
        if bits >= 2 {
            let data = random_dataset(rng.split(2), bits as usize - 1, 12);
            let q: Vec<f64> = (0..bits as u64 - 1).map(|i| rng.normal_at(30_000 + i)).collect();
            check(&family, &grid, &data, &q);
        }
    }
}

#[test]
fn spot_checks_up_to_sixteen_qubits() {
    let root = CounterRng::new(11);
    for (k, bits) in [14u32, 16].into_iter().enumerate() {
        let rng = root.split(k as u64);
        let grid = ParameterGrid::new(
            vec![Interval::new(-1.0, 1.0).unwrap(), Interval::new(-1.0, 1.0).unwrap()],
            bits / 2,
        )
        .unwrap();
        let data = random_dataset(rng, 1, 30);
        for q in 0..3 {
            check(&ModelFamily::Threshold1D, &grid, &data, &[rng.normal_at(50_000 + q)]);
        }
    }
    let grid = ParameterGrid::uniform(4, -1.0, 1.0, 4).unwrap();
    let data = random_dataset(root.split(9), 3, 25);
    check(&ModelFamily::Perceptron { inputs: 3 }, &grid, &data, &[0.3, -0.2, 0.9]);
}

#[test]
fn mlp_grid_agrees() {
    let family = ModelFamily::Mlp2Hidden { inputs: 2, hidden: [2, 2] };
    let grid = ParameterGrid::uniform(family.parameter_count(), -1.0, 1.0, 1).unwrap();
    let data = random_dataset(CounterRng::new(3), 2, 10);
    check(&family, &grid, &data, &[0.4, -1.1]);
}
