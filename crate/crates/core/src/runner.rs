//! Configured runs: problem construction, snapshot output, repeated timing
//! and derivative convergence tables.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use crate::config::{ProblemKind, RunConfig};
use crate::derivatives::{upwind, Scheme};
use crate::error::{Error, Result};
use crate::grid::{Grid, ScalarField};
use crate::hamiltonian::HamiltonianProblem;
use crate::implicit::ImplicitSurface;
use crate::problems::{
    build_rocket_problem, rigid_rotation_problem, solve, RocketParams, Solution, ThetaAxis,
};
use crate::report::RunReport;
use crate::snapshot::write_snapshot;

/// Builds the configured problem, applying the scheme and clamp overrides.
pub fn build_problem(config: &RunConfig) -> Result<(HamiltonianProblem, ImplicitSurface)> {
    config.validate()?;
    if config.grid_counts < config.scheme.min_nodes() {
        return Err(Error::Config(format!(
            "scheme {} needs at least {} nodes per dimension, got {}",
            config.scheme,
            config.scheme.min_nodes(),
            config.grid_counts
        )));
    }
    let (mut problem, surface) = match config.problem {
        ProblemKind::Rockets => {
            let params = RocketParams {
                form: config.rocket_form,
                theta_axis: if config.periodic_theta {
                    ThetaAxis::Periodic
                } else {
                    ThetaAxis::Wide
                },
                ..RocketParams::default()
            };
            build_rocket_problem(config.grid_counts, params)?
        }
        ProblemKind::RigidRotation => rigid_rotation_problem(config.grid_counts)?,
    };
    problem.scheme = config.scheme;
    problem.restrict_update = config.clamp;
    Ok((problem, surface))
}

pub fn solve_config(config: &RunConfig) -> Result<Solution> {
    let (problem, surface) = build_problem(config)?;
    solve(
        &problem,
        &surface,
        config.tspan,
        config.checkpoints,
        config.integrator,
        config.cfl_factor,
    )
}

#[derive(Debug)]
pub struct RunOutcome {
    pub solution: Solution,
    pub snapshots: Vec<PathBuf>,
    pub report_path: PathBuf,
}

/// Solves once and writes `snapshot_NNN.bin` per checkpoint plus
/// `report.txt` into the output directory.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    let solution = solve_config(config)?;
    let dir = &config.output_dir;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut snapshots = Vec::with_capacity(solution.checkpoints.len());
    for (k, c) in solution.checkpoints.iter().enumerate() {
        let path = dir.join(format!("snapshot_{k:03}.bin"));
        write_snapshot(&path, &c.field, c.time)?;
        snapshots.push(path);
    }
    let report_path = dir.join("report.txt");
    let text = solution.report.to_text(&config.to_pairs());
    fs::write(&report_path, text).map_err(|e| Error::io(&report_path, e))?;
    Ok(RunOutcome {
        solution,
        snapshots,
        report_path,
    })
}

/// Solves `config.repeats` times and aggregates the loop timings. Nothing
/// is written to disk.
pub fn bench(config: &RunConfig) -> Result<RunReport> {
    let (problem, surface) = build_problem(config)?;
    let runs = (0..config.repeats)
        .map(|_| {
            solve(
                &problem,
                &surface,
                config.tspan,
                config.checkpoints,
                config.integrator,
                config.cfl_factor,
            )
            .map(|s| s.report)
        })
        .collect::<Result<Vec<_>>>()?;
    RunReport::aggregate(&runs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceCase {
    /// `sin(2 pi x)` on the periodic unit interval.
    Sine,
    /// `3x - 1` on `[0, 1]` with linear extrapolation.
    Linear,
}

impl FromStr for ConvergenceCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sine" => Ok(ConvergenceCase::Sine),
            "linear" => Ok(ConvergenceCase::Linear),
            _ => Err(Error::Config(format!(
                "unknown convergence case {s:?}; valid cases: sine, linear"
            ))),
        }
    }
}

type Profile = fn(f64) -> f64;

/// Errors below this are treated as round-off.
pub const EXACT_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub dx: f64,
    /// Largest error of either one-sided derivative over all nodes.
    pub max_error: f64,
    /// `log2` of the error ratio against the previous row.
    pub order: Option<f64>,
}

impl ConvergenceRow {
    pub fn is_exact(&self) -> bool {
        self.max_error < EXACT_THRESHOLD
    }
}

/// One-sided derivative errors for `refinements + 1` grids of `n0`, `2 n0`,
/// ... nodes.
pub fn convergence_study(
    case: ConvergenceCase,
    scheme: Scheme,
    n0: usize,
    refinements: usize,
) -> Result<Vec<ConvergenceRow>> {
    if n0 < scheme.min_nodes() {
        return Err(Error::Config(format!(
            "scheme {scheme} needs at least {} nodes, got {n0}",
            scheme.min_nodes()
        )));
    }
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(refinements + 1);
    for k in 0..=refinements {
        let n = n0 << k;
        let (grid, f, df): (Grid, Profile, Profile) = match case {
            ConvergenceCase::Sine => (
                Grid::new(&[0.0], &[1.0 - 1.0 / n as f64], &[n], &[0])?,
                |x| (2.0 * PI * x).sin(),
                |x| 2.0 * PI * (2.0 * PI * x).cos(),
            ),
            ConvergenceCase::Linear => (
                Grid::new(&[0.0], &[1.0], &[n], &[])?,
                |x| 3.0 * x - 1.0,
                |_| 3.0,
            ),
        };
        let grid = Arc::new(grid);
        let v = ScalarField::from_fn(Arc::clone(&grid), |x| f(x[0]));
        let exact = ScalarField::from_fn(Arc::clone(&grid), |x| df(x[0]));
        let d = upwind(&v, 0, scheme)?;
        let err = d
            .left
            .max_abs_diff(&exact)?
            .max(d.right.max_abs_diff(&exact)?);
        let order = rows.last().and_then(|prev| {
            (prev.max_error >= EXACT_THRESHOLD && err >= EXACT_THRESHOLD)
                .then(|| (prev.max_error / err).log2())
        });
        rows.push(ConvergenceRow {
            n,
            dx: grid.spacing(0),
            max_error: err,
            order,
        });
    }
    Ok(rows)
}

/// CSV with columns `n,dx,max_error,order`; the order column reads `exact`
/// for round-off errors and `-` on the first row.
pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("n,dx,max_error,order\n");
    for (k, r) in rows.iter().enumerate() {
        let order = match r.order {
            Some(p) => format!("{p:.4}"),
            None if r.is_exact() => "exact".into(),
            None if k == 0 => "-".into(),
            None => "exact".into(),
        };
        let _ = writeln!(out, "{},{:e},{:e},{}", r.n, r.dx, r.max_error, order);
    }
    out
}
