//! Upwind approximations of the spatial gradient, one dimension at a time.
//!
//! Every scheme returns a backward-biased (`left`) and a forward-biased
//! (`right`) derivative at each node. Lanes along the differentiated
//! dimension are independent and are processed in parallel.

use std::fmt;
use std::str::FromStr;

use ndarray::{ArrayD, ArrayViewMut1, Axis, Zip};

use crate::error::{Error, Result};
use crate::grid::{check_stencil, fill_padded, ScalarField};

/// Small constant keeping WENO weights finite on flat data.
pub const WENO_EPSILON: f64 = 1e-6;

/// Linear (optimal) weights of the three WENO substencils.
pub const WENO_LINEAR_WEIGHTS: [f64; 3] = [0.1, 0.6, 0.3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    First,
    Eno2,
    Eno3,
    Weno5,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::First, Scheme::Eno2, Scheme::Eno3, Scheme::Weno5];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::First => "first",
            Scheme::Eno2 => "eno2",
            Scheme::Eno3 => "eno3",
            Scheme::Weno5 => "weno5",
        }
    }

    /// Ghost cells needed on each side.
    pub fn ghost_width(self) -> usize {
        match self {
            Scheme::First => 1,
            Scheme::Eno2 => 2,
            Scheme::Eno3 | Scheme::Weno5 => 3,
        }
    }

    /// Minimum node count along a differentiated dimension.
    pub fn min_nodes(self) -> usize {
        match self {
            Scheme::First => 3,
            Scheme::Eno2 => 5,
            Scheme::Eno3 | Scheme::Weno5 => 7,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown scheme {s:?}; valid schemes: {}",
                    Scheme::ALL.map(Scheme::name).join(", ")
                ))
            })
    }
}

/// Left- and right-biased derivatives along one dimension.
#[derive(Debug, Clone)]
pub struct DerivativePair {
    pub left: ScalarField,
    pub right: ScalarField,
    pub dim: usize,
}

pub fn upwind_first_first(v: &ScalarField, dim: usize) -> Result<DerivativePair> {
    upwind(v, dim, Scheme::First)
}

pub fn upwind_first_eno2(v: &ScalarField, dim: usize) -> Result<DerivativePair> {
    upwind(v, dim, Scheme::Eno2)
}

pub fn upwind_first_eno3(v: &ScalarField, dim: usize) -> Result<DerivativePair> {
    upwind(v, dim, Scheme::Eno3)
}

pub fn upwind_first_weno5(v: &ScalarField, dim: usize) -> Result<DerivativePair> {
    upwind(v, dim, Scheme::Weno5)
}

/// Left/right derivatives of `v` along `dim` with the given scheme.
pub fn upwind(v: &ScalarField, dim: usize, scheme: Scheme) -> Result<DerivativePair> {
    let grid = v.grid();
    check_stencil(grid, dim, scheme.ghost_width())?;
    let count = grid.counts()[dim];
    if count < scheme.min_nodes() {
        return Err(Error::StencilTooWide {
            dim,
            width: scheme.ghost_width(),
            count,
        });
    }
    let dx = grid.spacing(dim);
    let bc = grid.boundary(dim);
    let width = scheme.ghost_width();

    let mut left = ArrayD::zeros(grid.shape());
    let mut right = ArrayD::zeros(grid.shape());
    Zip::from(v.data().lanes(Axis(dim)))
        .and(left.lanes_mut(Axis(dim)))
        .and(right.lanes_mut(Axis(dim)))
        .par_for_each(|src, dl, dr| {
            let mut padded = vec![0.0; src.len() + 2 * width];
            fill_padded(src, width, bc, &mut padded);
            match scheme {
                Scheme::First => first_lane(&padded, width, dx, dl, dr),
                Scheme::Eno2 => eno2_lane(&padded, width, dx, dl, dr),
                Scheme::Eno3 => eno3_lane(&padded, width, dx, dl, dr),
                Scheme::Weno5 => weno5_lane(&padded, width, dx, dl, dr),
            }
        });

    Ok(DerivativePair {
        left: v.with_data(left),
        right: v.with_data(right),
        dim,
    })
}

fn first_lane(
    p: &[f64],
    w: usize,
    dx: f64,
    mut left: ArrayViewMut1<f64>,
    mut right: ArrayViewMut1<f64>,
) {
    for i in 0..left.len() {
        let j = i + w;
        left[i] = (p[j] - p[j - 1]) / dx;
        right[i] = (p[j + 1] - p[j]) / dx;
    }
}

/// First divided differences: `d1[k]` sits at `k + 1/2`.
fn first_differences(p: &[f64], dx: f64) -> Vec<f64> {
    p.windows(2).map(|s| (s[1] - s[0]) / dx).collect()
}

/// Second divided differences: `d2[k]` sits at node `k`; entry 0 and the
/// last entry are unused.
fn second_differences(d1: &[f64], dx: f64) -> Vec<f64> {
    let mut d2 = vec![0.0; d1.len() + 1];
    for k in 1..d1.len() {
        d2[k] = (d1[k] - d1[k - 1]) / (2.0 * dx);
    }
    d2
}

fn eno2_lane(
    p: &[f64],
    w: usize,
    dx: f64,
    mut left: ArrayViewMut1<f64>,
    mut right: ArrayViewMut1<f64>,
) {
    let d1 = first_differences(p, dx);
    let d2 = second_differences(&d1, dx);
    for i in 0..left.len() {
        let j = i + w;
        let c = if d2[j - 1].abs() <= d2[j].abs() {
            d2[j - 1]
        } else {
            d2[j]
        };
        left[i] = d1[j - 1] + c * dx;
        let c = if d2[j].abs() <= d2[j + 1].abs() {
            d2[j]
        } else {
            d2[j + 1]
        };
        right[i] = d1[j] - c * dx;
    }
}

fn eno3_lane(
    p: &[f64],
    w: usize,
    dx: f64,
    mut left: ArrayViewMut1<f64>,
    mut right: ArrayViewMut1<f64>,
) {
    let d1 = first_differences(p, dx);
    let d2 = second_differences(&d1, dx);
    // d3[k] sits at k + 1/2
    let mut d3 = vec![0.0; d2.len()];
    for k in 1..d2.len() - 2 {
        d3[k] = (d2[k + 1] - d2[k]) / (3.0 * dx);
    }
    let dx2 = dx * dx;
    // Third-level correction for a stencil whose leftmost node is `kstar`,
    // evaluated at node `j`.
    let third = |j: usize, kstar: usize| {
        let c = if d3[kstar].abs() <= d3[kstar + 1].abs() {
            d3[kstar]
        } else {
            d3[kstar + 1]
        };
        let s = (j - kstar) as f64;
        c * (3.0 * s * s - 6.0 * s + 2.0) * dx2
    };
    for i in 0..left.len() {
        let j = i + w;

        let (c, kstar) = if d2[j - 1].abs() <= d2[j].abs() {
            (d2[j - 1], j - 2)
        } else {
            (d2[j], j - 1)
        };
        left[i] = d1[j - 1] + c * dx + third(j, kstar);

        let (c, kstar) = if d2[j].abs() <= d2[j + 1].abs() {
            (d2[j], j - 1)
        } else {
            (d2[j + 1], j)
        };
        right[i] = d1[j] - c * dx + third(j, kstar);
    }
}

/// Nonlinear weights for five consecutive one-sided differences, ordered
/// from the far upwind side.
pub(crate) fn weno5_weights(v: [f64; 5]) -> [f64; 3] {
    let [v1, v2, v3, v4, v5] = v;
    let s1 = 13.0 / 12.0 * (v1 - 2.0 * v2 + v3).powi(2) + 0.25 * (v1 - 4.0 * v2 + 3.0 * v3).powi(2);
    let s2 = 13.0 / 12.0 * (v2 - 2.0 * v3 + v4).powi(2) + 0.25 * (v2 - v4).powi(2);
    let s3 = 13.0 / 12.0 * (v3 - 2.0 * v4 + v5).powi(2) + 0.25 * (3.0 * v3 - 4.0 * v4 + v5).powi(2);
    let a = [
        WENO_LINEAR_WEIGHTS[0] / (WENO_EPSILON + s1).powi(2),
        WENO_LINEAR_WEIGHTS[1] / (WENO_EPSILON + s2).powi(2),
        WENO_LINEAR_WEIGHTS[2] / (WENO_EPSILON + s3).powi(2),
    ];
    let sum = a[0] + a[1] + a[2];
    [a[0] / sum, a[1] / sum, a[2] / sum]
}

fn weno5_combine(v: [f64; 5]) -> f64 {
    let [v1, v2, v3, v4, v5] = v;
    let phi1 = v1 / 3.0 - 7.0 * v2 / 6.0 + 11.0 * v3 / 6.0;
    let phi2 = -v2 / 6.0 + 5.0 * v3 / 6.0 + v4 / 3.0;
    let phi3 = v3 / 3.0 + 5.0 * v4 / 6.0 - v5 / 6.0;
    let [w1, w2, w3] = weno5_weights(v);
    w1 * phi1 + w2 * phi2 + w3 * phi3
}

fn weno5_lane(
    p: &[f64],
    w: usize,
    dx: f64,
    mut left: ArrayViewMut1<f64>,
    mut right: ArrayViewMut1<f64>,
) {
    let d1 = first_differences(p, dx);
    for i in 0..left.len() {
        let j = i + w;
        // d1[j - 1] is the backward difference at node j
        left[i] = weno5_combine([d1[j - 3], d1[j - 2], d1[j - 1], d1[j], d1[j + 1]]);
        right[i] = weno5_combine([d1[j + 2], d1[j + 1], d1[j], d1[j - 1], d1[j - 2]]);
    }
}
