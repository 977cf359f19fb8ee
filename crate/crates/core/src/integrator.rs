//! CFL-constrained TVD Runge-Kutta time stepping (method of lines).

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use ndarray::Zip;

use crate::error::{Error, Result};
use crate::grid::ScalarField;
use crate::hamiltonian::Term;

pub const DEFAULT_CFL_FACTOR: f64 = 0.32;
pub const DEFAULT_TERMINATION_EPSILON: f64 = 1e-6;
const LANDING_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct IntegratorOptions {
    /// Fraction of the term's stable step actually taken, in `(0, 1]`.
    pub cfl_factor: f64,
    /// Upper bound on every step; `f64::INFINITY` for none.
    pub max_step: f64,
    /// Integration stops once `tf - t < termination_epsilon * max(|tf|, tf - t0)`.
    pub termination_epsilon: f64,
    /// Times in `(t0, tf]` the integrator lands on exactly and snapshots.
    pub checkpoint_times: Vec<f64>,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        IntegratorOptions {
            cfl_factor: DEFAULT_CFL_FACTOR,
            max_step: f64::INFINITY,
            termination_epsilon: DEFAULT_TERMINATION_EPSILON,
            checkpoint_times: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TimeScheme {
    Cfl1,
    Cfl2,
    Cfl3,
}

impl TimeScheme {
    pub const ALL: [TimeScheme; 3] = [TimeScheme::Cfl1, TimeScheme::Cfl2, TimeScheme::Cfl3];

    pub fn name(self) -> &'static str {
        match self {
            TimeScheme::Cfl1 => "cfl_1",
            TimeScheme::Cfl2 => "cfl_2",
            TimeScheme::Cfl3 => "cfl_3",
        }
    }

    pub fn order(self) -> usize {
        match self {
            TimeScheme::Cfl1 => 1,
            TimeScheme::Cfl2 => 2,
            TimeScheme::Cfl3 => 3,
        }
    }
}

impl fmt::Display for TimeScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TimeScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TimeScheme::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown integrator {s:?}; valid integrators: {}",
                    TimeScheme::ALL.map(TimeScheme::name).join(", ")
                ))
            })
    }
}

/// One accepted step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    /// Time at the start of the step.
    pub time: f64,
    pub dt: f64,
    /// Stable step reported by the first substep.
    pub step_bound: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct Integration {
    pub t: f64,
    pub v: ScalarField,
    pub steps: Vec<StepRecord>,
    pub checkpoints: Vec<(f64, ScalarField)>,
}

impl Integration {
    pub fn loop_time(&self) -> Duration {
        self.steps.iter().map(|s| s.elapsed).sum()
    }
}

pub fn ode_cfl_1<T: Term + ?Sized>(
    term: &T,
    tspan: (f64, f64),
    v0: &ScalarField,
    opts: &IntegratorOptions,
) -> Result<Integration> {
    integrate(TimeScheme::Cfl1, term, tspan, v0, opts)
}

pub fn ode_cfl_2<T: Term + ?Sized>(
    term: &T,
    tspan: (f64, f64),
    v0: &ScalarField,
    opts: &IntegratorOptions,
) -> Result<Integration> {
    integrate(TimeScheme::Cfl2, term, tspan, v0, opts)
}

pub fn ode_cfl_3<T: Term + ?Sized>(
    term: &T,
    tspan: (f64, f64),
    v0: &ScalarField,
    opts: &IntegratorOptions,
) -> Result<Integration> {
    integrate(TimeScheme::Cfl3, term, tspan, v0, opts)
}

fn validate(tspan: (f64, f64), opts: &IntegratorOptions) -> Result<()> {
    let (t0, tf) = tspan;
    if !(t0.is_finite() && tf.is_finite()) || tf < t0 {
        return Err(Error::Domain(format!("invalid time span ({t0}, {tf})")));
    }
    if !(opts.cfl_factor > 0.0 && opts.cfl_factor <= 1.0) {
        return Err(Error::Domain(format!(
            "cfl_factor {} outside (0, 1]",
            opts.cfl_factor
        )));
    }
    if opts.max_step.is_nan() || opts.max_step <= 0.0 {
        return Err(Error::Domain(format!(
            "max_step {} must be positive",
            opts.max_step
        )));
    }
    if !(opts.termination_epsilon > 0.0 && opts.termination_epsilon < 1.0) {
        return Err(Error::Domain(format!(
            "termination_epsilon {} outside (0, 1)",
            opts.termination_epsilon
        )));
    }
    let mut prev = t0;
    for &c in &opts.checkpoint_times {
        if !(c > prev && c <= tf) {
            return Err(Error::Domain(format!(
                "checkpoint times must increase strictly within ({t0}, {tf}]; got {c} after {prev}"
            )));
        }
        prev = c;
    }
    Ok(())
}

fn abort(time: f64, reason: impl Into<String>) -> Error {
    Error::IntegrationAbort {
        time,
        reason: reason.into(),
    }
}

fn check_bound(time: f64, bound: f64) -> Result<()> {
    if bound.is_nan() || bound <= 0.0 {
        return Err(abort(time, format!("step bound {bound} is not positive")));
    }
    Ok(())
}

fn rate(term: &(impl Term + ?Sized), t: f64, v: &ScalarField) -> Result<(ScalarField, f64)> {
    let r = term.evaluate(t, v)?;
    check_bound(t, r.step_bound)?;
    if !r.dvdt.same_grid(v) {
        return Err(Error::GridMismatch);
    }
    Ok((r.dvdt, r.step_bound))
}

/// `(a * x + b * y) / c`, elementwise.
fn blend(x: &ScalarField, a: f64, y: &ScalarField, b: f64, c: f64) -> ScalarField {
    let mut out = x.data().clone();
    Zip::from(&mut out)
        .and(y.data())
        .par_for_each(|o, &yv| *o = (a * *o + b * yv) / c);
    x.with_data(out)
}

/// Advances `v0` over `tspan` with the chosen TVD-RK scheme.
pub fn integrate<T: Term + ?Sized>(
    scheme: TimeScheme,
    term: &T,
    tspan: (f64, f64),
    v0: &ScalarField,
    opts: &IntegratorOptions,
) -> Result<Integration> {
    validate(tspan, opts)?;
    let (t0, tf) = tspan;
    let stop = opts.termination_epsilon * tf.abs().max(tf - t0);

    let mut t = t0;
    let mut v = v0.clone();
    let mut steps = Vec::new();
    let mut checkpoints = Vec::with_capacity(opts.checkpoint_times.len());
    let mut next_ck = 0;

    while tf - t >= stop && tf > t {
        let started = Instant::now();
        let (l0, bound) = rate(term, t, &v)?;

        // a step may land on tf or a checkpoint by exceeding max_step by
        // round-off, never by exceeding the CFL limit
        let cfl_dt = opts.cfl_factor * bound;
        let reach = (opts.max_step * (1.0 + LANDING_SLACK)).min(cfl_dt);
        let mut dt = (tf - t).min(opts.max_step).min(cfl_dt);
        let mut target = None;
        if tf - t <= reach {
            dt = tf - t;
            target = Some(tf);
        }
        if let Some(&ck) = opts.checkpoint_times.get(next_ck) {
            if ck - t <= dt || (ck - t <= reach && ck < tf) {
                dt = ck - t;
                target = Some(ck);
            }
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(abort(t, format!("non-positive step {dt}")));
        }

        let v1 = v.add_scaled(dt, &l0)?;
        let next = match scheme {
            TimeScheme::Cfl1 => v1,
            TimeScheme::Cfl2 => {
                let (l1, _) = rate(term, t + dt, &v1)?;
                let v2 = v1.add_scaled(dt, &l1)?;
                blend(&v, 1.0, &v2, 1.0, 2.0)
            }
            TimeScheme::Cfl3 => {
                let (l1, _) = rate(term, t + dt, &v1)?;
                let v2 = v1.add_scaled(dt, &l1)?;
                let v_half = blend(&v, 3.0, &v2, 1.0, 4.0);
                let (l2, _) = rate(term, t + 0.5 * dt, &v_half)?;
                let v_three_halves = v_half.add_scaled(dt, &l2)?;
                blend(&v, 1.0, &v_three_halves, 2.0, 3.0)
            }
        };
        if !next.is_finite() {
            return Err(abort(t, "value function became non-finite"));
        }

        steps.push(StepRecord {
            time: t,
            dt,
            step_bound: bound,
            v_min: next.min(),
            v_max: next.max(),
            elapsed: started.elapsed(),
        });
        v = next;
        t = target.unwrap_or(t + dt);

        while let Some(&ck) = opts.checkpoint_times.get(next_ck) {
            if ck <= t {
                checkpoints.push((ck, v.clone()));
                next_ck += 1;
            } else {
                break;
            }
        }
    }
    // checkpoints within the termination tolerance of tf
    for &ck in &opts.checkpoint_times[next_ck..] {
        checkpoints.push((ck, v.clone()));
    }

    Ok(Integration {
        t,
        v,
        steps,
        checkpoints,
    })
}
