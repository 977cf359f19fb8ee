//! Two identical rockets in a pursuit-evasion game, in relative coordinates
//! `(x, z, theta)` where `theta` is the relative thrust inclination.
//!
//! Relative dynamics with evader control `u_e` and pursuer control `u_p`:
//!
//! ```text
//! x'     = a cos(theta) + u_e x
//! z'     = a sin(theta) + a + u_p x - g
//! theta' = u_p - u_e
//! ```

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use ndarray::{ArrayD, Zip};

use crate::derivatives::Scheme;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::hamiltonian::{Hamiltonian, HamiltonianProblem, UpdateDirection};
use crate::implicit::ImplicitSurface;

/// Half-width of the reproduction grid in every dimension.
pub const ROCKET_EXTENT: f64 = 64.0;

/// Node count per dimension used for desk-scale runs.
pub const ROCKET_DESK_COUNTS: usize = 50;

/// Which closed form of the game Hamiltonian to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RocketForm {
    /// `-a p1 cos(th) - p2 (g - a - a sin(th)) - u_max |p1 x + p3| + u_min |p2 x + p3|`,
    /// taken term for term from the published closed form.
    #[default]
    Printed,
    /// The max over `u_e` / min over `u_p` of `-p . f(x, u)` evaluated exactly.
    MinMax,
}

impl RocketForm {
    pub fn name(self) -> &'static str {
        match self {
            RocketForm::Printed => "printed",
            RocketForm::MinMax => "minmax",
        }
    }
}

impl fmt::Display for RocketForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RocketForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(RocketForm::Printed),
            "minmax" => Ok(RocketForm::MinMax),
            _ => Err(Error::Config(format!(
                "unknown rocket Hamiltonian form {s:?}; valid forms: printed, minmax"
            ))),
        }
    }
}

/// Extent of the `theta` dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThetaAxis {
    /// `[-64, 64]`, non-periodic, like the spatial dimensions.
    #[default]
    Wide,
    /// One full turn `[-pi, pi)`, periodic.
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocketParams {
    /// Thrust acceleration, ft/s^2.
    pub a: f64,
    /// Gravitational acceleration, ft/s^2.
    pub g: f64,
    /// Capture radius, ft.
    pub capture_radius: f64,
    pub u_min: f64,
    pub u_max: f64,
    pub form: RocketForm,
    pub theta_axis: ThetaAxis,
}

impl Default for RocketParams {
    fn default() -> Self {
        RocketParams {
            a: 1.0,
            g: 32.0,
            capture_radius: 1.5,
            u_min: -1.0,
            u_max: 1.0,
            form: RocketForm::Printed,
            theta_axis: ThetaAxis::Wide,
        }
    }
}

impl RocketParams {
    pub fn validate(&self) -> Result<()> {
        let ok = self.a > 0.0
            && self.g > 0.0
            && self.capture_radius > 0.0
            && self.u_min < self.u_max
            && [self.a, self.g, self.capture_radius, self.u_min, self.u_max]
                .iter()
                .all(|v| v.is_finite());
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("invalid rocket parameters {self:?}")))
        }
    }

    /// `-max_{u_e} min_{u_p} p . f(x, theta, u_e, u_p)` at one point.
    pub fn hamiltonian_minmax(&self, x: f64, theta: f64, p: [f64; 3]) -> f64 {
        let [p1, p2, p3] = p;
        let drift = self.a * p1 * theta.cos() + p2 * (self.a * theta.sin() + self.a - self.g);
        // u_e multiplies (p1 x - p3); u_p multiplies (p2 x + p3)
        let se = p1 * x - p3;
        let sp = p2 * x + p3;
        let evader = if se >= 0.0 {
            self.u_max * se
        } else {
            self.u_min * se
        };
        let pursuer = if sp >= 0.0 {
            self.u_min * sp
        } else {
            self.u_max * sp
        };
        -(drift + evader + pursuer)
    }

    /// The published closed form at one point.
    pub fn hamiltonian_printed(&self, x: f64, theta: f64, p: [f64; 3]) -> f64 {
        let [p1, p2, p3] = p;
        -self.a * p1 * theta.cos()
            - p2 * (self.g - self.a - self.a * theta.sin())
            - self.u_max * (p1 * x + p3).abs()
            + self.u_min * (p2 * x + p3).abs()
    }

    pub fn hamiltonian_at(&self, x: f64, theta: f64, p: [f64; 3]) -> f64 {
        match self.form {
            RocketForm::Printed => self.hamiltonian_printed(x, theta, p),
            RocketForm::MinMax => self.hamiltonian_minmax(x, theta, p),
        }
    }

    /// Bound on `|dH/dp_dim|` over admissible controls, valid for both forms.
    pub fn dissipation_at(&self, x: f64, theta: f64, dim: usize) -> f64 {
        let u_abs = self.u_min.abs().max(self.u_max.abs());
        match dim {
            0 => (self.a * theta.cos()).abs() + u_abs * x.abs(),
            1 => (self.a * theta.sin() + self.a - self.g).abs() + u_abs * x.abs(),
            _ => (self.u_max - self.u_min).max(self.u_min.abs() + self.u_max.abs()),
        }
    }
}

/// The rocket game as a [`Hamiltonian`] on an `(x, z, theta)` grid.
#[derive(Debug, Clone, Copy)]
pub struct RocketGame {
    pub params: RocketParams,
}

impl Hamiltonian for RocketGame {
    fn hamiltonian(&self, t: f64, grid: &Grid, costate: &[ArrayD<f64>]) -> ArrayD<f64> {
        rocket_hamiltonian(t, grid, costate, &self.params)
    }

    fn dissipation_bound(&self, t: f64, grid: &Grid, dim: usize) -> ArrayD<f64> {
        rocket_dissipation(t, grid, dim, &self.params)
    }
}

pub fn rocket_hamiltonian(
    _t: f64,
    grid: &Grid,
    costate: &[ArrayD<f64>],
    params: &RocketParams,
) -> ArrayD<f64> {
    let mut out = ArrayD::zeros(grid.shape());
    Zip::from(&mut out)
        .and(grid.coords(0))
        .and(grid.coords(2))
        .and(&costate[0])
        .and(&costate[1])
        .and(&costate[2])
        .par_for_each(|h, &x, &th, &p1, &p2, &p3| *h = params.hamiltonian_at(x, th, [p1, p2, p3]));
    out
}

pub fn rocket_dissipation(_t: f64, grid: &Grid, dim: usize, params: &RocketParams) -> ArrayD<f64> {
    let mut out = ArrayD::zeros(grid.shape());
    Zip::from(&mut out)
        .and(grid.coords(0))
        .and(grid.coords(2))
        .par_for_each(|a, &x, &th| *a = params.dissipation_at(x, th, dim));
    out
}

pub fn rocket_grid(grid_counts: usize, theta_axis: ThetaAxis) -> Result<Grid> {
    if grid_counts < 7 {
        return Err(Error::Domain(format!(
            "rocket grid needs at least 7 nodes per dimension, got {grid_counts}"
        )));
    }
    let n = [grid_counts; 3];
    match theta_axis {
        ThetaAxis::Wide => Grid::new(&[-ROCKET_EXTENT; 3], &[ROCKET_EXTENT; 3], &n, &[]),
        ThetaAxis::Periodic => {
            let top = PI - 2.0 * PI / grid_counts as f64;
            Grid::new(
                &[-ROCKET_EXTENT, -ROCKET_EXTENT, -PI],
                &[ROCKET_EXTENT, ROCKET_EXTENT, top],
                &n,
                &[2],
            )
        }
    }
}

/// Rocket game with ENO2 costates, global Lax-Friedrichs dissipation, and
/// the monotone clamp; the target is the capture cylinder around the
/// `theta` axis.
pub fn build_rocket_problem(
    grid_counts: usize,
    params: RocketParams,
) -> Result<(HamiltonianProblem, ImplicitSurface)> {
    params.validate()?;
    let grid = Arc::new(rocket_grid(grid_counts, params.theta_axis)?);
    let target = ImplicitSurface::cylinder(&grid, &[2], &[0.0, 0.0, 0.0], params.capture_radius)?;
    let problem = HamiltonianProblem {
        grid,
        system: Arc::new(RocketGame { params }),
        scheme: Scheme::Eno2,
        direction: UpdateDirection::Positive,
        restrict_update: true,
    };
    Ok((problem, target))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_costate_gives_zero() {
        let p = RocketParams::default();
        for form in [RocketForm::Printed, RocketForm::MinMax] {
            let p = RocketParams { form, ..p };
            assert_eq!(p.hamiltonian_at(3.0, 0.4, [0.0; 3]), 0.0);
        }
    }

    #[test]
    fn unit_costate_at_origin() {
        let p = RocketParams::default();
        assert_eq!(p.hamiltonian_printed(0.0, 0.0, [1.0, 0.0, 0.0]), -1.0);
        assert_eq!(p.hamiltonian_minmax(0.0, 0.0, [1.0, 0.0, 0.0]), -1.0);
    }

    #[test]
    fn dissipation_at_origin() {
        let p = RocketParams::default();
        assert_eq!(
            [0, 1, 2].map(|d| p.dissipation_at(0.0, 0.0, d)),
            [1.0, 31.0, 2.0]
        );
    }

    #[test]
    fn default_build() {
        let (problem, target) = build_rocket_problem(100, RocketParams::default()).unwrap();
        let g = &problem.grid;
        for d in 0..3 {
            assert!((g.spacing(d) - 128.0 / 99.0).abs() < 1e-12);
        }
        assert!((g.spacing(0) - 1.2929).abs() < 1e-4);
        assert_eq!(problem.scheme, Scheme::Eno2);
        assert!(problem.restrict_update);
        assert_eq!(problem.direction, UpdateDirection::Positive);
        assert!(target.field().min() < 0.0 && target.field().max() > 0.0);
        assert!(build_rocket_problem(6, RocketParams::default()).is_err());
    }

    #[test]
    fn cylinder_axis_is_radius_deep() {
        // odd count puts a node on x = z = 0
        let (_, target) = build_rocket_problem(51, RocketParams::default()).unwrap();
        for k in 0..51 {
            assert_eq!(target.field().get(&[25, 25, k]), -1.5);
        }
    }

    #[test]
    fn periodic_theta_variant() {
        let params = RocketParams {
            theta_axis: ThetaAxis::Periodic,
            ..RocketParams::default()
        };
        let (problem, _) = build_rocket_problem(20, params).unwrap();
        let g = &problem.grid;
        assert_eq!(g.periodic_dims(), vec![2]);
        assert!((g.spacing(2) * 20.0 - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn form_names() {
        assert_eq!("minmax".parse::<RocketForm>().unwrap(), RocketForm::MinMax);
        assert!("other".parse::<RocketForm>().is_err());
    }
}
