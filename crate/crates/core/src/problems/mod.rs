//! Built-in problems and the checkpointed solve driver.

pub mod rocket;
pub mod rotation;

use crate::error::{Error, Result};
use crate::grid::ScalarField;
use crate::hamiltonian::HamiltonianProblem;
use crate::implicit::ImplicitSurface;
use crate::integrator::{integrate, IntegratorOptions, StepRecord, TimeScheme};
use crate::report::RunReport;

pub use rocket::{
    build_rocket_problem, rocket_dissipation, rocket_hamiltonian, RocketForm, RocketGame,
    RocketParams, ThetaAxis,
};
pub use rotation::{rigid_rotation_problem, RigidRotation};

/// A value field at a given integration time. Time is measured from the
/// initial surface, so the first checkpoint is always at 0.
#[derive(Debug, Clone)]
pub struct Checkpoint {
    pub time: f64,
    pub field: ScalarField,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub checkpoints: Vec<Checkpoint>,
    pub steps: Vec<StepRecord>,
    pub report: RunReport,
}

/// Integrates `initial` for the length of `tspan`, split into
/// `n_checkpoints - 1` equal segments. Every checkpoint, including the
/// initial surface, is returned.
pub fn solve(
    problem: &HamiltonianProblem,
    initial: &ImplicitSurface,
    tspan: (f64, f64),
    n_checkpoints: usize,
    scheme: TimeScheme,
    cfl_factor: f64,
) -> Result<Solution> {
    let (t0, tf) = tspan;
    if !(t0.is_finite() && tf.is_finite()) {
        return Err(Error::Domain(format!("invalid time span ({t0}, {tf})")));
    }
    if n_checkpoints < 2 {
        return Err(Error::Domain(format!(
            "need at least 2 checkpoints, got {n_checkpoints}"
        )));
    }
    let length = (tf - t0).abs();
    let v0 = initial.field().clone();
    let mut checkpoints = vec![Checkpoint {
        time: 0.0,
        field: v0.clone(),
    }];
    if length == 0.0 {
        return Ok(Solution {
            checkpoints,
            steps: Vec::new(),
            report: RunReport::single(std::time::Duration::ZERO, &[]),
        });
    }

    let segments = (n_checkpoints - 1) as f64;
    let times: Vec<f64> = (1..n_checkpoints)
        .map(|k| {
            if k == n_checkpoints - 1 {
                length
            } else {
                length * k as f64 / segments
            }
        })
        .collect();
    let opts = IntegratorOptions {
        cfl_factor,
        checkpoint_times: times,
        ..IntegratorOptions::default()
    };
    let out = integrate(scheme, problem, (0.0, length), &v0, &opts)?;
    checkpoints.extend(
        out.checkpoints
            .into_iter()
            .map(|(time, field)| Checkpoint { time, field }),
    );
    let report = RunReport::single(out.steps.iter().map(|s| s.elapsed).sum(), &out.steps);
    Ok(Solution {
        checkpoints,
        steps: out.steps,
        report,
    })
}

/// Backward reachable tube: third-order TVD-RK with the default CFL factor.
pub fn solve_brt(
    problem: &HamiltonianProblem,
    initial: &ImplicitSurface,
    tspan: (f64, f64),
    n_checkpoints: usize,
) -> Result<Solution> {
    solve(
        problem,
        initial,
        tspan,
        n_checkpoints,
        TimeScheme::Cfl3,
        crate::integrator::DEFAULT_CFL_FACTOR,
    )
}
