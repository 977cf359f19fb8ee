//! Rigid counter-clockwise rotation of a circle about the origin, used to
//! validate the solver against an exact solution.

use std::f64::consts::PI;
use std::sync::Arc;

use ndarray::{ArrayD, Zip};

use crate::derivatives::Scheme;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::hamiltonian::{Hamiltonian, HamiltonianProblem};
use crate::implicit::ImplicitSurface;

/// Time for one full revolution.
pub const ROTATION_PERIOD: f64 = 2.0 * PI;

pub const ROTATION_CENTER: [f64; 2] = [0.5, 0.0];
pub const ROTATION_RADIUS: f64 = 0.5;

/// `H(x, p) = u(x) . p` with `u(x, y) = (-y, x)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RigidRotation;

impl Hamiltonian for RigidRotation {
    fn hamiltonian(&self, _t: f64, grid: &Grid, costate: &[ArrayD<f64>]) -> ArrayD<f64> {
        let mut out = ArrayD::zeros(grid.shape());
        Zip::from(&mut out)
            .and(grid.coords(0))
            .and(grid.coords(1))
            .and(&costate[0])
            .and(&costate[1])
            .par_for_each(|h, &x, &y, &p0, &p1| *h = -y * p0 + x * p1);
        out
    }

    fn dissipation_bound(&self, _t: f64, grid: &Grid, dim: usize) -> ArrayD<f64> {
        // |u_0| = |y|, |u_1| = |x|
        grid.coords(1 - dim).mapv(f64::abs)
    }
}

/// Rotation on `[-1, 1]^2` with WENO5 costates; the initial surface is a
/// circle of radius 0.5 centred at `(0.5, 0)`.
pub fn rigid_rotation_problem(grid_counts: usize) -> Result<(HamiltonianProblem, ImplicitSurface)> {
    if grid_counts < 7 {
        return Err(Error::Domain(format!(
            "rotation grid needs at least 7 nodes per dimension, got {grid_counts}"
        )));
    }
    let grid = Arc::new(Grid::new(
        &[-1.0, -1.0],
        &[1.0, 1.0],
        &[grid_counts, grid_counts],
        &[],
    )?);
    let surface = ImplicitSurface::sphere(&grid, &ROTATION_CENTER, ROTATION_RADIUS)?;
    let problem = HamiltonianProblem::new(grid, Arc::new(RigidRotation), Scheme::Weno5);
    Ok((problem, surface))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_in_costate() {
        let (problem, _) = rigid_rotation_problem(11).unwrap();
        let g = &problem.grid;
        let zero = vec![ArrayD::zeros(g.shape()), ArrayD::zeros(g.shape())];
        assert!(RigidRotation
            .hamiltonian(0.0, g, &zero)
            .iter()
            .all(|&h| h == 0.0));
        let ones = vec![
            ArrayD::from_elem(g.shape(), 1.0),
            ArrayD::from_elem(g.shape(), 2.0),
        ];
        let h = RigidRotation.hamiltonian(0.0, g, &ones);
        // node (x, y) = (1, -1): -(-1)*1 + 1*2
        assert_eq!(h[[10, 0]], 3.0);
    }

    #[test]
    fn bounds_are_speeds() {
        let (problem, surface) = rigid_rotation_problem(11).unwrap();
        let g = &problem.grid;
        let a0 = RigidRotation.dissipation_bound(0.0, g, 0);
        let a1 = RigidRotation.dissipation_bound(0.0, g, 1);
        assert_eq!(a0[[3, 0]], 1.0);
        assert_eq!(a1[[0, 3]], 1.0);
        assert_eq!(a1[[5, 3]], 0.0);
        // node (7, 5) is (0.4, 0), 0.1 from the centre
        assert!((surface.field().get(&[7, 5]) + 0.4).abs() < 1e-12);
    }
}
