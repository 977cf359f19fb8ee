//! Uniform Cartesian grids, value fields sampled on them, and ghost-cell
//! padding for stencil kernels.
//!
//! All n-D arrays are stored column-major (first index varies fastest).

use std::fmt;
use std::sync::Arc;

use ndarray::{
    Array1, ArrayD, ArrayView1, ArrayViewD, ArrayViewMut1, Axis, IxDyn, ShapeBuilder, Slice, Zip,
};

use crate::error::{Error, Result};

/// Minimum number of nodes per dimension.
pub const MIN_NODES: usize = 3;

/// How ghost cells are filled at the two ends of a dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryCondition {
    /// Cyclic wrap: the node after the last is the first.
    Periodic,
    /// Continue the slope of the two outermost nodes.
    ExtrapolateLinear,
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryCondition::Periodic => f.write_str("periodic"),
            BoundaryCondition::ExtrapolateLinear => f.write_str("extrapolate"),
        }
    }
}

/// A uniform Cartesian grid.
///
/// `axes[d]` holds the 1-D node coordinates of dimension `d`; `coords[d]`
/// holds the same values broadcast to the full n-D shape.
#[derive(Debug, Clone)]
pub struct Grid {
    mins: Vec<f64>,
    maxs: Vec<f64>,
    counts: Vec<usize>,
    spacings: Vec<f64>,
    axes: Vec<Array1<f64>>,
    coords: Vec<ArrayD<f64>>,
    boundary: Vec<BoundaryCondition>,
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.mins == other.mins
            && self.maxs == other.maxs
            && self.counts == other.counts
            && self.boundary == other.boundary
    }
}

impl Grid {
    /// Builds a grid spanning `[mins, maxs]` inclusive with `counts` nodes per
    /// dimension. Dimensions listed in `periodic_dims` wrap; all others use
    /// linear extrapolation.
    pub fn new(
        mins: &[f64],
        maxs: &[f64],
        counts: &[usize],
        periodic_dims: &[usize],
    ) -> Result<Self> {
        let dim = mins.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch(
                "grid needs at least one dimension".into(),
            ));
        }
        if maxs.len() != dim || counts.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "mins has {} entries, maxs {}, counts {}",
                dim,
                maxs.len(),
                counts.len()
            )));
        }
        if let Some(&bad) = periodic_dims.iter().find(|&&d| d >= dim) {
            return Err(Error::DimensionMismatch(format!(
                "periodic dimension {bad} out of range for a {dim}-D grid"
            )));
        }
        for d in 0..dim {
            if !(mins[d].is_finite() && maxs[d].is_finite()) {
                return Err(Error::Domain(format!("non-finite bounds in dimension {d}")));
            }
            if maxs[d] <= mins[d] {
                return Err(Error::Domain(format!(
                    "dimension {d}: max {} must exceed min {}",
                    maxs[d], mins[d]
                )));
            }
            if counts[d] < MIN_NODES {
                return Err(Error::Domain(format!(
                    "dimension {d}: need at least {MIN_NODES} nodes, got {}",
                    counts[d]
                )));
            }
        }

        let spacings: Vec<f64> = (0..dim)
            .map(|d| (maxs[d] - mins[d]) / (counts[d] - 1) as f64)
            .collect();
        let axes: Vec<Array1<f64>> = (0..dim)
            .map(|d| {
                let n = counts[d];
                Array1::from_shape_fn(n, |k| {
                    if k == n - 1 {
                        maxs[d]
                    } else {
                        mins[d] + k as f64 * spacings[d]
                    }
                })
            })
            .collect();
        let shape = IxDyn(counts).f();
        let coords = axes
            .iter()
            .enumerate()
            .map(|(d, axis)| ArrayD::from_shape_fn(shape.clone(), |idx| axis[idx[d]]))
            .collect();
        let boundary = (0..dim)
            .map(|d| {
                if periodic_dims.contains(&d) {
                    BoundaryCondition::Periodic
                } else {
                    BoundaryCondition::ExtrapolateLinear
                }
            })
            .collect();

        Ok(Grid {
            mins: mins.to_vec(),
            maxs: maxs.to_vec(),
            counts: counts.to_vec(),
            spacings,
            axes,
            coords,
            boundary,
        })
    }

    pub fn dim(&self) -> usize {
        self.counts.len()
    }

    pub fn mins(&self) -> &[f64] {
        &self.mins
    }

    pub fn maxs(&self) -> &[f64] {
        &self.maxs
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn spacings(&self) -> &[f64] {
        &self.spacings
    }

    pub fn spacing(&self, dim: usize) -> f64 {
        self.spacings[dim]
    }

    pub fn axis(&self, dim: usize) -> &Array1<f64> {
        &self.axes[dim]
    }

    pub fn coords(&self, dim: usize) -> &ArrayD<f64> {
        &self.coords[dim]
    }

    pub fn boundary(&self, dim: usize) -> BoundaryCondition {
        self.boundary[dim]
    }

    pub fn boundaries(&self) -> &[BoundaryCondition] {
        &self.boundary
    }

    pub fn periodic_dims(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&d| self.boundary[d] == BoundaryCondition::Periodic)
            .collect()
    }

    pub fn node_count(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacings.iter().product()
    }

    /// Column-major shape descriptor for arrays living on this grid.
    pub fn shape(&self) -> ndarray::Shape<IxDyn> {
        IxDyn(&self.counts).f()
    }

    /// Node coordinates for a multi-index.
    pub fn point(&self, index: &[usize]) -> Vec<f64> {
        index
            .iter()
            .enumerate()
            .map(|(d, &i)| self.axes[d][i])
            .collect()
    }
}

/// Samples of a value function, one per grid node.
#[derive(Debug, Clone)]
pub struct ScalarField {
    grid: Arc<Grid>,
    data: ArrayD<f64>,
}

impl ScalarField {
    pub fn new(grid: Arc<Grid>, data: ArrayD<f64>) -> Result<Self> {
        if data.shape() != grid.counts() {
            return Err(Error::DimensionMismatch(format!(
                "field shape {:?} does not match grid counts {:?}",
                data.shape(),
                grid.counts()
            )));
        }
        Ok(ScalarField { grid, data })
    }

    pub fn zeros(grid: Arc<Grid>) -> Self {
        let data = ArrayD::zeros(grid.shape());
        ScalarField { grid, data }
    }

    pub fn constant(grid: Arc<Grid>, value: f64) -> Self {
        let data = ArrayD::from_elem(grid.shape(), value);
        ScalarField { grid, data }
    }

    /// Evaluates `f` at the physical coordinates of every node.
    pub fn from_fn(grid: Arc<Grid>, mut f: impl FnMut(&[f64]) -> f64) -> Self {
        let dim = grid.dim();
        let mut point = vec![0.0; dim];
        let data = ArrayD::from_shape_fn(grid.shape(), |idx| {
            for (d, p) in point.iter_mut().enumerate() {
                *p = grid.axis(d)[idx[d]];
            }
            f(&point)
        });
        ScalarField { grid, data }
    }

    /// Builds a field from a flat column-major buffer.
    pub fn from_column_major(grid: Arc<Grid>, values: Vec<f64>) -> Result<Self> {
        let expected = grid.node_count();
        if values.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "expected {expected} values, got {}",
                values.len()
            )));
        }
        let data = ArrayD::from_shape_vec(grid.shape(), values)
            .map_err(|e| Error::DimensionMismatch(e.to_string()))?;
        Ok(ScalarField { grid, data })
    }

    /// Copies the values out in column-major order.
    pub fn to_column_major(&self) -> Vec<f64> {
        self.data.t().iter().copied().collect()
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn data(&self) -> &ArrayD<f64> {
        &self.data
    }

    pub fn into_data(self) -> ArrayD<f64> {
        self.data
    }

    pub fn get(&self, index: &[usize]) -> f64 {
        self.data[IxDyn(index)]
    }

    pub fn min(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.data.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn same_grid(&self, other: &ScalarField) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || *self.grid == *other.grid
    }

    /// Same grid, new values.
    pub(crate) fn with_data(&self, data: ArrayD<f64>) -> ScalarField {
        debug_assert_eq!(data.shape(), self.grid.counts());
        ScalarField {
            grid: Arc::clone(&self.grid),
            data,
        }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64 + Sync + Send) -> ScalarField {
        let mut data = ArrayD::zeros(self.grid.shape());
        Zip::from(&mut data)
            .and(&self.data)
            .par_for_each(|o, &v| *o = f(v));
        self.with_data(data)
    }

    pub fn zip_with(
        &self,
        other: &ScalarField,
        f: impl Fn(f64, f64) -> f64 + Sync + Send,
    ) -> Result<ScalarField> {
        if !self.same_grid(other) {
            return Err(Error::GridMismatch);
        }
        let mut data = ArrayD::zeros(self.grid.shape());
        Zip::from(&mut data)
            .and(&self.data)
            .and(&other.data)
            .par_for_each(|o, &a, &b| *o = f(a, b));
        Ok(self.with_data(data))
    }

    /// Returns `self + scale * rhs`.
    pub fn add_scaled(&self, scale: f64, rhs: &ScalarField) -> Result<ScalarField> {
        self.zip_with(rhs, |a, b| a + scale * b)
    }

    /// Largest absolute pointwise difference.
    pub fn max_abs_diff(&self, other: &ScalarField) -> Result<f64> {
        if !self.same_grid(other) {
            return Err(Error::GridMismatch);
        }
        Ok(Zip::from(&self.data)
            .and(&other.data)
            .fold(0.0_f64, |acc, &a, &b| acc.max((a - b).abs())))
    }

    /// Number of nodes with a non-positive value.
    pub fn count_nonpositive(&self) -> usize {
        self.data.iter().filter(|&&v| v <= 0.0).count()
    }

    /// Restricts to the 2-D slice where every dimension except `keep` is
    /// fixed at the given index. `fixed` must have one entry per dimension;
    /// entries for the kept dimensions are ignored.
    pub fn slice_2d(&self, keep: (usize, usize), fixed: &[usize]) -> Result<ScalarField> {
        let g = &self.grid;
        let dim = g.dim();
        let (a, b) = keep;
        if a >= dim || b >= dim || a == b || fixed.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot keep dimensions ({a}, {b}) of a {dim}-D field with {} fixed indices",
                fixed.len()
            )));
        }
        for d in 0..dim {
            if d != a && d != b && fixed[d] >= g.counts()[d] {
                return Err(Error::Domain(format!(
                    "slice index {} out of range in dimension {d}",
                    fixed[d]
                )));
            }
        }
        let periodic: Vec<usize> = [a, b]
            .iter()
            .enumerate()
            .filter(|(_, &d)| g.boundary(d) == BoundaryCondition::Periodic)
            .map(|(k, _)| k)
            .collect();
        let sub = Arc::new(Grid::new(
            &[g.mins()[a], g.mins()[b]],
            &[g.maxs()[a], g.maxs()[b]],
            &[g.counts()[a], g.counts()[b]],
            &periodic,
        )?);
        let mut index = fixed.to_vec();
        let data = ArrayD::from_shape_fn(sub.shape(), |idx| {
            index[a] = idx[0];
            index[b] = idx[1];
            self.data[IxDyn(&index)]
        });
        ScalarField::new(sub, data)
    }
}

/// Fills `out` (length `n + 2 * width`) with `src` surrounded by ghost cells.
pub(crate) fn fill_padded(
    src: ArrayView1<f64>,
    width: usize,
    bc: BoundaryCondition,
    out: &mut [f64],
) {
    let n = src.len();
    debug_assert_eq!(out.len(), n + 2 * width);
    debug_assert!(width < n);
    for (i, &v) in src.iter().enumerate() {
        out[width + i] = v;
    }
    match bc {
        BoundaryCondition::Periodic => {
            for k in 0..width {
                out[k] = src[n - width + k];
                out[width + n + k] = src[k];
            }
        }
        BoundaryCondition::ExtrapolateLinear => {
            let lo_slope = src[0] - src[1];
            let hi_slope = src[n - 1] - src[n - 2];
            for k in 1..=width {
                out[width - k] = src[0] + k as f64 * lo_slope;
                out[width + n - 1 + k] = src[n - 1] + k as f64 * hi_slope;
            }
        }
    }
}

pub(crate) fn check_stencil(grid: &Grid, dim: usize, width: usize) -> Result<()> {
    if dim >= grid.dim() {
        return Err(Error::DimensionMismatch(format!(
            "dimension {dim} out of range for a {}-D grid",
            grid.dim()
        )));
    }
    let count = grid.counts()[dim];
    if width == 0 || width >= count {
        return Err(Error::StencilTooWide { dim, width, count });
    }
    Ok(())
}

/// Pads `field` along `dim` with `width` ghost cells on each side, filled
/// according to the grid's boundary condition for that dimension.
pub fn pad_ghost(field: &ScalarField, dim: usize, width: usize) -> Result<ArrayD<f64>> {
    let grid = field.grid();
    check_stencil(grid, dim, width)?;
    let bc = grid.boundary(dim);
    let mut shape = grid.counts().to_vec();
    shape[dim] += 2 * width;
    let mut padded = ArrayD::zeros(IxDyn(&shape).f());
    Zip::from(field.data().lanes(Axis(dim)))
        .and(padded.lanes_mut(Axis(dim)))
        .for_each(|src, mut dst: ArrayViewMut1<f64>| {
            let mut buf = vec![0.0; dst.len()];
            fill_padded(src, width, bc, &mut buf);
            dst.iter_mut().zip(buf).for_each(|(d, v)| *d = v);
        });
    Ok(padded)
}

/// View of a padded array aligned so that entry `i` reads interior entry
/// `i + offset`.
pub fn shift_along_dim(
    padded: &ArrayD<f64>,
    dim: usize,
    width: usize,
    offset: isize,
) -> Result<ArrayViewD<'_, f64>> {
    if dim >= padded.ndim() {
        return Err(Error::DimensionMismatch(format!(
            "dimension {dim} out of range for a {}-D array",
            padded.ndim()
        )));
    }
    if offset.unsigned_abs() > width {
        return Err(Error::ShiftOutOfRange { offset, width });
    }
    let total = padded.len_of(Axis(dim));
    if total < 2 * width + 1 {
        return Err(Error::StencilTooWide {
            dim,
            width,
            count: total.saturating_sub(2 * width),
        });
    }
    let n = total - 2 * width;
    let start = width as isize + offset;
    Ok(padded.slice_axis(Axis(dim), Slice::from(start..start + n as isize)))
}
