//! Lax-Friedrichs numerical Hamiltonian for `v_t + H(t, x, grad v) = 0`.
//!
//! The returned rate is `dv/dt = -(H(p_central) - sum_d alpha_d (right_d - left_d) / 2)`
//! with global Lax-Friedrichs coefficients: `alpha_d` is the grid-wide
//! maximum of the problem's bound on `|dH/dp_d|`.

use std::fmt;
use std::sync::Arc;

use ndarray::{ArrayD, Zip};

use crate::derivatives::{upwind, DerivativePair, Scheme};
use crate::error::{Error, Result};
use crate::grid::{Grid, ScalarField};

/// A Hamiltonian together with bounds on its costate partials.
///
/// `dissipation_bound` must dominate `|dH/dp_dim|` over every admissible
/// control and costate at each node. It may depend on the state
/// coordinates and time but never on the value function.
pub trait Hamiltonian: Send + Sync {
    /// `H(t, x, p)` at every node, with `costate[d]` holding `p_d`.
    fn hamiltonian(&self, t: f64, grid: &Grid, costate: &[ArrayD<f64>]) -> ArrayD<f64>;

    /// Pointwise bound on `|dH/dp_dim|`.
    fn dissipation_bound(&self, t: f64, grid: &Grid, dim: usize) -> ArrayD<f64>;
}

/// Which way the clamped update is allowed to move the value function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UpdateDirection {
    /// `v` may only decrease, so the negative sublevel set only grows.
    #[default]
    Positive,
    /// `v` may only increase.
    Negative,
}

/// A spatial operator `L(t, v)` with its CFL bound, as consumed by the
/// time integrators.
pub trait Term {
    fn evaluate(&self, t: f64, v: &ScalarField) -> Result<TermResult>;
}

impl<F> Term for F
where
    F: Fn(f64, &ScalarField) -> Result<TermResult>,
{
    fn evaluate(&self, t: f64, v: &ScalarField) -> Result<TermResult> {
        self(t, v)
    }
}

#[derive(Debug, Clone)]
pub struct TermResult {
    pub dvdt: ScalarField,
    /// Largest stable step; `+inf` when every dissipation coefficient is zero.
    pub step_bound: f64,
}

#[derive(Clone)]
pub struct HamiltonianProblem {
    pub grid: Arc<Grid>,
    pub system: Arc<dyn Hamiltonian>,
    pub scheme: Scheme,
    pub direction: UpdateDirection,
    pub restrict_update: bool,
}

impl fmt::Debug for HamiltonianProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HamiltonianProblem")
            .field("counts", &self.grid.counts())
            .field("scheme", &self.scheme)
            .field("direction", &self.direction)
            .field("restrict_update", &self.restrict_update)
            .finish()
    }
}

impl HamiltonianProblem {
    pub fn new(grid: Arc<Grid>, system: Arc<dyn Hamiltonian>, scheme: Scheme) -> Self {
        HamiltonianProblem {
            grid,
            system,
            scheme,
            direction: UpdateDirection::default(),
            restrict_update: false,
        }
    }

    /// Global Lax-Friedrichs coefficients at time `t`.
    pub fn dissipation_coefficients(&self, t: f64) -> Result<Vec<f64>> {
        (0..self.grid.dim())
            .map(|d| {
                let bound = self.system.dissipation_bound(t, &self.grid, d);
                let mut alpha = 0.0_f64;
                for &b in bound.iter() {
                    if !b.is_finite() || b < 0.0 {
                        return Err(Error::IntegrationAbort {
                            time: t,
                            reason: format!("dissipation bound for dimension {d} is {b}"),
                        });
                    }
                    alpha = alpha.max(b);
                }
                Ok(alpha)
            })
            .collect()
    }
}

impl Term for HamiltonianProblem {
    fn evaluate(&self, t: f64, v: &ScalarField) -> Result<TermResult> {
        term_lax_friedrichs(t, v, self)
    }
}

/// Full Lax-Friedrichs term: upwind derivatives, numerical Hamiltonian,
/// dissipation, CFL bound, and the optional monotone clamp.
pub fn term_lax_friedrichs(
    t: f64,
    v: &ScalarField,
    problem: &HamiltonianProblem,
) -> Result<TermResult> {
    if **v.grid() != *problem.grid {
        return Err(Error::GridMismatch);
    }
    let pairs = (0..problem.grid.dim())
        .map(|d| upwind(v, d, problem.scheme))
        .collect::<Result<Vec<_>>>()?;
    let mut result = lax_friedrichs_from_derivatives(t, problem, &pairs)?;
    if problem.restrict_update {
        result.dvdt = restrict_update(&result.dvdt, problem.direction);
    }
    Ok(result)
}

/// Lax-Friedrichs combination of precomputed derivative pairs, one per
/// dimension in order. No clamp is applied.
pub fn lax_friedrichs_from_derivatives(
    t: f64,
    problem: &HamiltonianProblem,
    pairs: &[DerivativePair],
) -> Result<TermResult> {
    let grid = &problem.grid;
    if pairs.len() != grid.dim() || pairs.iter().enumerate().any(|(d, p)| p.dim != d) {
        return Err(Error::DimensionMismatch(format!(
            "need one derivative pair per dimension (0..{}) in order",
            grid.dim()
        )));
    }
    let costate: Vec<ArrayD<f64>> = pairs
        .iter()
        .map(|p| {
            let mut c = ArrayD::zeros(grid.shape());
            Zip::from(&mut c)
                .and(p.left.data())
                .and(p.right.data())
                .par_for_each(|c, &l, &r| *c = 0.5 * (l + r));
            c
        })
        .collect();

    let ham = problem.system.hamiltonian(t, grid, &costate);
    if ham.shape() != grid.counts() {
        return Err(Error::DimensionMismatch(
            "Hamiltonian returned a field of the wrong shape".into(),
        ));
    }
    if let Some(bad) = ham.iter().find(|h| !h.is_finite()) {
        return Err(Error::IntegrationAbort {
            time: t,
            reason: format!("Hamiltonian evaluated to {bad}"),
        });
    }
    let alpha = problem.dissipation_coefficients(t)?;

    let mut dvdt = ham;
    for (d, pair) in pairs.iter().enumerate() {
        let a = alpha[d];
        if a == 0.0 {
            continue;
        }
        Zip::from(&mut dvdt)
            .and(pair.left.data())
            .and(pair.right.data())
            .par_for_each(|h, &l, &r| *h -= a * 0.5 * (r - l));
    }
    dvdt.par_mapv_inplace(|h| -h);

    let rate: f64 = alpha
        .iter()
        .zip(grid.spacings())
        .map(|(a, dx)| a / dx)
        .sum();
    let step_bound = if rate > 0.0 {
        1.0 / rate
    } else {
        f64::INFINITY
    };

    Ok(TermResult {
        dvdt: ScalarField::new(Arc::clone(grid), dvdt)?,
        step_bound,
    })
}

/// Clamps the rate so the value function moves in one direction only.
pub fn restrict_update(dvdt: &ScalarField, direction: UpdateDirection) -> ScalarField {
    match direction {
        UpdateDirection::Positive => dvdt.map(|r| r.min(0.0)),
        UpdateDirection::Negative => dvdt.map(|r| r.max(0.0)),
    }
}
