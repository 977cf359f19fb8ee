use std::sync::Arc;

use ndarray::ArrayD;
use proptest::prelude::*;

use levelset::hamiltonian::lax_friedrichs_from_derivatives;
use levelset::snapshot::Snapshot;
use levelset::{
    pad_ghost, shift_along_dim, term_lax_friedrichs, upwind, Grid, Hamiltonian, HamiltonianProblem,
    ImplicitSurface, ScalarField, Scheme,
};

fn scheme() -> impl Strategy<Value = Scheme> {
    prop::sample::select(Scheme::ALL.to_vec())
}

fn periodic_line(n: usize) -> Arc<Grid> {
    Arc::new(Grid::new(&[0.0], &[1.0 - 1.0 / n as f64], &[n], &[0]).unwrap())
}

/// Constant-velocity advection, `H = u . p`.
struct Advection(Vec<f64>);

impl Hamiltonian for Advection {
    fn hamiltonian(&self, _t: f64, grid: &Grid, costate: &[ArrayD<f64>]) -> ArrayD<f64> {
        let mut h = ArrayD::zeros(grid.shape());
        for (p, u) in costate.iter().zip(&self.0) {
            h.zip_mut_with(p, |h, &p| *h += u * p);
        }
        h
    }

    fn dissipation_bound(&self, _t: f64, grid: &Grid, dim: usize) -> ArrayD<f64> {
        ArrayD::from_elem(grid.shape(), self.0[dim].abs())
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn periodic_shift_wraps(values in prop::collection::vec(-10.0..10.0f64, 7..30), width in 1usize..4) {
        let n = values.len();
        let f = ScalarField::from_column_major(periodic_line(n), values.clone()).unwrap();
        let padded = pad_ghost(&f, 0, width).unwrap();
        for off in -(width as isize)..=(width as isize) {
            let view = shift_along_dim(&padded, 0, width, off).unwrap();
            for i in 0..n {
                let j = (i as isize + off).rem_euclid(n as isize) as usize;
                prop_assert_eq!(view[[i].as_slice()], values[j]);
            }
        }
    }

    #[test]
    fn extrapolation_extends_linear_data(slope in -5.0..5.0f64, icpt in -5.0..5.0f64, n in 7usize..25, width in 1usize..4) {
        let g = Arc::new(Grid::new(&[-1.0], &[2.0], &[n], &[]).unwrap());
        let dx = g.spacing(0);
        let f = ScalarField::from_fn(Arc::clone(&g), |x| slope * x[0] + icpt);
        let padded = pad_ghost(&f, 0, width).unwrap();
        for k in 0..padded.len() {
            let x = -1.0 + (k as f64 - width as f64) * dx;
            prop_assert!((padded[[k].as_slice()] - (slope * x + icpt)).abs() < 1e-10);
        }
        // offset zero is the field itself
        prop_assert_eq!(shift_along_dim(&padded, 0, width, 0).unwrap(), f.data().view());
    }

    #[test]
    fn de_morgan(c1 in prop::array::uniform2(-1.0..1.0f64), r in 0.1..1.0f64,
                 lo in prop::array::uniform2(-1.0..0.0f64), ext in prop::array::uniform2(0.1..1.0f64)) {
        let g = Arc::new(Grid::new(&[-1.5, -1.5], &[1.5, 1.5], &[23, 19], &[]).unwrap());
        let a = ImplicitSurface::sphere(&g, &c1, r).unwrap();
        let hi = [lo[0] + ext[0], lo[1] + ext[1]];
        let b = ImplicitSurface::rectangle(&g, &lo, &hi).unwrap();
        let lhs = a.union(&b).unwrap().complement();
        let rhs = a.complement().intersection(&b.complement()).unwrap();
        prop_assert_eq!(lhs.field().data(), rhs.field().data());
        let lhs = a.intersection(&b).unwrap().complement();
        let rhs = a.complement().union(&b.complement()).unwrap();
        prop_assert_eq!(lhs.field().data(), rhs.field().data());
    }

    #[test]
    fn derivatives_commute_with_periodic_translation(values in prop::collection::vec(-1.0..1.0f64, 12..40),
                                                   shift in 1usize..11, s in scheme()) {
        let n = values.len();
        let g = periodic_line(n);
        let f = ScalarField::from_column_major(Arc::clone(&g), values.clone()).unwrap();
        let rolled: Vec<f64> = (0..n).map(|i| values[(i + shift) % n]).collect();
        let fr = ScalarField::from_column_major(g, rolled).unwrap();
        let d = upwind(&f, 0, s).unwrap();
        let dr = upwind(&fr, 0, s).unwrap();
        for i in 0..n {
            let j = (i + shift) % n;
            prop_assert!((dr.left.get(&[i]) - d.left.get(&[j])).abs() < 1e-9);
            prop_assert!((dr.right.get(&[i]) - d.right.get(&[j])).abs() < 1e-9);
        }
    }

    #[test]
    fn mirrored_data_swaps_left_and_right(values in prop::collection::vec(-1.0..1.0f64, 12..40), s in scheme()) {
        // x -> -x maps a periodic grid of n nodes onto itself with i -> (n - i) mod n
        let n = values.len();
        let g = periodic_line(n);
        let f = ScalarField::from_column_major(Arc::clone(&g), values.clone()).unwrap();
        let mirrored: Vec<f64> = (0..n).map(|i| values[(n - i) % n]).collect();
        let fm = ScalarField::from_column_major(g, mirrored).unwrap();
        let d = upwind(&f, 0, s).unwrap();
        let dm = upwind(&fm, 0, s).unwrap();
        for i in 0..n {
            let j = (n - i) % n;
            prop_assert!((dm.left.get(&[i]) + d.right.get(&[j])).abs() < 1e-9);
            prop_assert!((dm.right.get(&[i]) + d.left.get(&[j])).abs() < 1e-9);
        }
    }

    #[test]
    fn step_bound_is_inverse_rate_sum(u in prop::array::uniform2(-3.0..3.0f64), n in 7usize..15) {
        let g = Arc::new(Grid::new(&[-1.0, 0.0], &[1.0, 3.0], &[n, n + 2], &[]).unwrap());
        let problem = HamiltonianProblem::new(Arc::clone(&g), Arc::new(Advection(u.to_vec())), Scheme::First);
        let v = ImplicitSurface::sphere(&g, &[0.0, 1.0], 0.5).unwrap();
        let r = term_lax_friedrichs(0.0, v.field(), &problem).unwrap();
        let expected = 1.0 / (u[0].abs() / g.spacing(0) + u[1].abs() / g.spacing(1));
        prop_assert!((r.step_bound - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn equal_sides_remove_dissipation(u in prop::array::uniform2(-3.0..3.0f64), seed in 0u64..1000) {
        let g = Arc::new(Grid::new(&[-1.0, -1.0], &[1.0, 1.0], &[9, 9], &[]).unwrap());
        let problem = HamiltonianProblem::new(Arc::clone(&g), Arc::new(Advection(u.to_vec())), Scheme::First);
        let mut k = seed;
        let f = ScalarField::from_fn(Arc::clone(&g), |_| {
            k = k.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (k >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        });
        let pairs: Vec<_> = (0..2)
            .map(|d| levelset::DerivativePair { left: f.clone(), right: f.clone(), dim: d })
            .collect();
        let r = lax_friedrichs_from_derivatives(0.0, &problem, &pairs).unwrap();
        let costate = vec![f.data().clone(), f.data().clone()];
        let h = problem.system.hamiltonian(0.0, &g, &costate);
        for (dv, h) in r.dvdt.data().iter().zip(h.iter()) {
            prop_assert_eq!(-dv, *h);
        }
    }

    #[test]
    fn snapshot_round_trip(values in prop::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 60),
                           time in -1e3..1e3f64) {
        let g = Arc::new(Grid::new(&[-2.0, 0.5], &[3.0, 1.5], &[10, 6], &[1]).unwrap());
        let f = ScalarField::from_column_major(Arc::clone(&g), values).unwrap();
        let mut buf = Vec::new();
        Snapshot::from_field(&f, time).write_to(&mut buf).unwrap();
        let s = Snapshot::read_from(&buf[..]).unwrap();
        prop_assert_eq!(s.time.to_bits(), time.to_bits());
        let back = s.to_field(&g).unwrap();
        for (a, b) in back.data().iter().zip(f.data()) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
    }
}
