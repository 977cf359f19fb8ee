//! Initial value functions built from geometric primitives.
//!
//! Sign convention: negative inside the represented set, zero on its
//! boundary, positive outside.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{Grid, ScalarField};

#[derive(Debug, Clone)]
pub struct ImplicitSurface {
    field: ScalarField,
}

impl ImplicitSurface {
    /// Wraps an arbitrary field as a level function. Fails on non-finite data.
    pub fn from_field(field: ScalarField) -> Result<Self> {
        if !field.is_finite() {
            return Err(Error::Domain(
                "implicit surface values must be finite".into(),
            ));
        }
        Ok(ImplicitSurface { field })
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn into_field(self) -> ScalarField {
        self.field
    }

    pub fn grid(&self) -> &Arc<Grid> {
        self.field.grid()
    }

    /// Signed distance to a sphere: `|x - center| - radius`.
    pub fn sphere(grid: &Arc<Grid>, center: &[f64], radius: f64) -> Result<Self> {
        check_center(grid, center)?;
        check_radius(radius)?;
        let field = ScalarField::from_fn(Arc::clone(grid), |x| {
            x.iter()
                .zip(center)
                .map(|(xi, ci)| (xi - ci) * (xi - ci))
                .sum::<f64>()
                .sqrt()
                - radius
        });
        Ok(ImplicitSurface { field })
    }

    /// Signed distance to an infinite cylinder whose axis runs along every
    /// dimension in `ignored_dims`. `center` entries for ignored dimensions
    /// are not used.
    pub fn cylinder(
        grid: &Arc<Grid>,
        ignored_dims: &[usize],
        center: &[f64],
        radius: f64,
    ) -> Result<Self> {
        check_center(grid, center)?;
        check_radius(radius)?;
        let dim = grid.dim();
        if let Some(&bad) = ignored_dims.iter().find(|&&d| d >= dim) {
            return Err(Error::DimensionMismatch(format!(
                "ignored dimension {bad} out of range"
            )));
        }
        let active: Vec<usize> = (0..dim).filter(|d| !ignored_dims.contains(d)).collect();
        if ignored_dims.is_empty() || active.is_empty() {
            return Err(Error::Domain(
                "cylinder needs a nonempty proper subset of dimensions to ignore".into(),
            ));
        }
        let field = ScalarField::from_fn(Arc::clone(grid), |x| {
            active
                .iter()
                .map(|&d| (x[d] - center[d]) * (x[d] - center[d]))
                .sum::<f64>()
                .sqrt()
                - radius
        });
        Ok(ImplicitSurface { field })
    }

    /// Axis-aligned box `[lower, upper]` as the max-coordinate-excess
    /// function `max_d max(lower_d - x_d, x_d - upper_d)`.
    pub fn rectangle(grid: &Arc<Grid>, lower: &[f64], upper: &[f64]) -> Result<Self> {
        check_center(grid, lower)?;
        check_center(grid, upper)?;
        if let Some(d) = (0..grid.dim()).find(|&d| lower[d] >= upper[d]) {
            return Err(Error::Domain(format!(
                "degenerate box in dimension {d}: [{}, {}]",
                lower[d], upper[d]
            )));
        }
        let field = ScalarField::from_fn(Arc::clone(grid), |x| {
            x.iter()
                .enumerate()
                .map(|(d, &xd)| (lower[d] - xd).max(xd - upper[d]))
                .fold(f64::NEG_INFINITY, f64::max)
        });
        Ok(ImplicitSurface { field })
    }

    /// Origin-centred ellipsoid level function `x0^2 + 4 x1^2 (+ 9 x2^2) - radius`.
    ///
    /// This is not a metric distance; only its zero set and sign are meaningful.
    pub fn ellipsoid(grid: &Arc<Grid>, radius: f64) -> Result<Self> {
        check_radius(radius)?;
        let dim = grid.dim();
        if !(2..=3).contains(&dim) {
            return Err(Error::DimensionMismatch(format!(
                "ellipsoid is defined on 2-D or 3-D grids, not {dim}-D"
            )));
        }
        let field = ScalarField::from_fn(Arc::clone(grid), |x| {
            let mut e = x[0] * x[0] + 4.0 * x[1] * x[1];
            if dim == 3 {
                e += 9.0 * x[2] * x[2];
            }
            e - radius
        });
        Ok(ImplicitSurface { field })
    }

    /// Set union: pointwise minimum.
    pub fn union(&self, other: &ImplicitSurface) -> Result<Self> {
        Ok(ImplicitSurface {
            field: self.field.zip_with(&other.field, f64::min)?,
        })
    }

    /// Set intersection: pointwise maximum.
    pub fn intersection(&self, other: &ImplicitSurface) -> Result<Self> {
        Ok(ImplicitSurface {
            field: self.field.zip_with(&other.field, f64::max)?,
        })
    }

    /// Set complement: pointwise negation.
    pub fn complement(&self) -> Self {
        ImplicitSurface {
            field: self.field.map(|v| -v),
        }
    }
}

fn check_center(grid: &Grid, center: &[f64]) -> Result<()> {
    if center.len() != grid.dim() {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, grid has {} dimensions",
            center.len(),
            grid.dim()
        )));
    }
    Ok(())
}

fn check_radius(radius: f64) -> Result<()> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Domain(format!(
            "radius must be positive, got {radius}"
        )));
    }
    Ok(())
}
