use std::f64::consts::PI;

use ndarray::ArrayD;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use levelset::problems::rocket::rocket_grid;
use levelset::problems::{
    build_rocket_problem, rocket_dissipation, rocket_hamiltonian, solve_brt, RocketForm,
    RocketParams, ThetaAxis,
};

/// `-max_{u_e} min_{u_p} p . f` over the extremal controls, with the
/// relative dynamics written out row by row.
fn corner_oracle(a: f64, g: f64, x: f64, th: f64, p: [f64; 3]) -> f64 {
    let f = |ue: f64, up: f64| {
        [
            a * th.cos() + ue * x,
            a * th.sin() + a + up * x - g,
            up - ue,
        ]
    };
    let dot = |v: [f64; 3]| p[0] * v[0] + p[1] * v[1] + p[2] * v[2];
    let best = [-1.0, 1.0]
        .iter()
        .map(|&ue| {
            [-1.0, 1.0]
                .iter()
                .map(|&up| dot(f(ue, up)))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    -best
}

fn sample(rng: &mut ChaCha8Rng) -> (f64, f64, [f64; 3]) {
    let x = rng.random_range(-64.0..64.0);
    let th = rng.random_range(-PI..PI);
    let p = [
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
    ];
    (x, th, p)
}

#[test]
fn minmax_form_matches_corner_oracle() {
    let params = RocketParams {
        form: RocketForm::MinMax,
        ..RocketParams::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let (x, th, p) = sample(&mut rng);
        let h = params.hamiltonian_at(x, th, p);
        assert!((h - corner_oracle(1.0, 32.0, x, th, p)).abs() <= 1e-12);
    }
}

#[test]
fn printed_form_deviation_is_three_terms() {
    let params = RocketParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let (x, th, p) = sample(&mut rng);
        let printed = params.hamiltonian_printed(x, th, p);
        let oracle = corner_oracle(1.0, 32.0, x, th, p);
        let drift = 2.0 * p[1] * (th.sin() + 1.0 - 32.0);
        let evader = (p[0] * x - p[2]).abs() - (p[0] * x + p[2]).abs();
        let pursuer = -2.0 * (p[1] * x + p[2]).abs();
        assert!((printed - oracle - (drift + evader + pursuer)).abs() <= 1e-9);
        worst = worst.max((printed - oracle).abs());
    }
    assert!(
        worst > 1.0,
        "the printed form should differ visibly from the oracle"
    );
}

#[test]
fn grid_evaluation_matches_pointwise() {
    let params = RocketParams::default();
    let g = rocket_grid(9, ThetaAxis::Wide).unwrap();
    let p: Vec<ArrayD<f64>> = (0..3)
        .map(|d| ArrayD::from_shape_fn(g.shape(), |ix| (ix[d] as f64 - 4.0) * 0.3 + d as f64))
        .collect();
    let h = rocket_hamiltonian(0.0, &g, &p, &params);
    let idx = [2, 7, 5];
    let x = g.point(&idx);
    let pc = [0, 1, 2].map(|d| p[d][idx.as_slice()]);
    assert_eq!(h[idx.as_slice()], params.hamiltonian_at(x[0], x[2], pc));
}

#[test]
fn dissipation_dominates_finite_difference_slopes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for form in [RocketForm::Printed, RocketForm::MinMax] {
        let params = RocketParams {
            form,
            ..RocketParams::default()
        };
        let g = rocket_grid(11, ThetaAxis::Wide).unwrap();
        let alpha: Vec<ArrayD<f64>> = (0..3)
            .map(|d| rocket_dissipation(0.0, &g, d, &params))
            .collect();
        let h = 1e-6;
        for _ in 0..1000 {
            let idx: Vec<usize> = (0..3).map(|_| rng.random_range(0..11)).collect();
            let x = g.point(&idx);
            let p = [0; 3].map(|_| rng.random_range(-3.0..3.0));
            for d in 0..3 {
                let (mut hi, mut lo) = (p, p);
                hi[d] += h;
                lo[d] -= h;
                let slope = (params.hamiltonian_at(x[0], x[2], hi)
                    - params.hamiltonian_at(x[0], x[2], lo))
                    / (2.0 * h);
                assert!(
                    slope.abs() <= alpha[d][idx.as_slice()] + 1e-6,
                    "{form:?} dim {d}: {slope}"
                );
            }
        }
    }
}

#[test]
fn coarse_tube_grows_monotonically() {
    let (problem, target) = build_rocket_problem(15, RocketParams::default()).unwrap();
    let sol = solve_brt(&problem, &target, (-1.0, 0.0), 5).unwrap();
    assert_eq!(sol.checkpoints.len(), 5);
    for w in sol.checkpoints.windows(2) {
        let (a, b) = (w[0].field.data(), w[1].field.data());
        assert!(b.iter().zip(a).all(|(b, a)| *b <= a + 1e-12));
    }
    for s in &sol.steps {
        assert!(s.dt <= 0.32 * s.step_bound * (1.0 + 1e-12));
    }
}

#[test]
fn periodic_theta_axis_wraps_a_full_turn() {
    let g = rocket_grid(40, ThetaAxis::Periodic).unwrap();
    assert_eq!(g.mins()[2], -PI);
    assert!((g.spacing(2) * 40.0 - 2.0 * PI).abs() < 1e-12);
    let params = RocketParams {
        theta_axis: ThetaAxis::Periodic,
        ..RocketParams::default()
    };
    let (problem, target) = build_rocket_problem(15, params).unwrap();
    let sol = solve_brt(&problem, &target, (-0.2, 0.0), 2).unwrap();
    assert!(sol.checkpoints[1].field.is_finite());
}
