//! C interface to the `levelset` solver.
//!
//! Objects cross the boundary as opaque heap handles that the caller frees
//! with the matching `*_free` function. Every fallible call returns an
//! [`LsStatus`]; on failure [`ls_last_error`] describes what went wrong on
//! the calling thread. Arrays are column-major (first index fastest).

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::slice;
use std::sync::Arc;

use levelset::problems::{
    build_rocket_problem, rigid_rotation_problem, solve_brt, RocketParams, Solution,
};
use levelset::snapshot::{read_snapshot, write_snapshot};
use levelset::{upwind, Error, Grid, ImplicitSurface, ScalarField, Scheme};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    Domain = 4,
    IntegrationAbort = 5,
    Config = 6,
    Io = 7,
    Snapshot = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LsScheme {
    First = 0,
    Eno2 = 1,
    Eno3 = 2,
    Weno5 = 3,
}

impl From<LsScheme> for Scheme {
    fn from(s: LsScheme) -> Self {
        match s {
            LsScheme::First => Scheme::First,
            LsScheme::Eno2 => Scheme::Eno2,
            LsScheme::Eno3 => Scheme::Eno3,
            LsScheme::Weno5 => Scheme::Weno5,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LsProblem {
    Rockets = 0,
    RigidRotation = 1,
}

/// Cartesian grid.
pub struct LsGrid(Arc<Grid>);

/// Values on a grid.
pub struct LsField(ScalarField);

/// Checkpoints of a finished solve.
pub struct LsSolution(Solution);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(LsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::DimensionMismatch(_) | Error::GridMismatch => LsStatus::DimensionMismatch,
            Error::Domain(_) | Error::StencilTooWide { .. } | Error::ShiftOutOfRange { .. } => {
                LsStatus::Domain
            }
            Error::IntegrationAbort { .. } => LsStatus::IntegrationAbort,
            Error::Config(_) => LsStatus::Config,
            Error::Snapshot(_) => LsStatus::Snapshot,
            Error::Io { .. } => LsStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            LsStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(LsStatus::NullPointer, format!("{what} is null"))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn array<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn path<'a>(p: *const c_char) -> Result<&'a Path, Failure> {
    if p.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map(Path::new)
        .map_err(|_| Failure(LsStatus::InvalidArgument, "path is not valid UTF-8".into()))
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ls_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates a grid. `periodic` holds one flag per dimension (nonzero means
/// periodic) and may be NULL for none.
#[no_mangle]
pub unsafe extern "C" fn ls_grid_new(
    dim: usize,
    mins: *const f64,
    maxs: *const f64,
    counts: *const usize,
    periodic: *const u8,
    out: *mut *mut LsGrid,
) -> LsStatus {
    guard(|| {
        if dim == 0 {
            return Err(Failure(
                LsStatus::InvalidArgument,
                "dim must be positive".into(),
            ));
        }
        let mins = array(mins, dim, "mins")?;
        let maxs = array(maxs, dim, "maxs")?;
        let counts = array(counts, dim, "counts")?;
        let periodic_dims: Vec<usize> = if periodic.is_null() {
            Vec::new()
        } else {
            (0..dim).filter(|&d| *periodic.add(d) != 0).collect()
        };
        let grid = Grid::new(mins, maxs, counts, &periodic_dims)?;
        store(out, LsGrid(Arc::new(grid)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ls_grid_free(grid: *mut LsGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Number of dimensions, or 0 for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn ls_grid_dim(grid: *const LsGrid) -> usize {
    grid.as_ref().map_or(0, |g| g.0.dim())
}

/// Total node count, or 0 for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn ls_grid_node_count(grid: *const LsGrid) -> usize {
    grid.as_ref().map_or(0, |g| g.0.node_count())
}

/// Writes `dim` node counts into `counts`.
#[no_mangle]
pub unsafe extern "C" fn ls_grid_counts(grid: *const LsGrid, counts: *mut usize) -> LsStatus {
    guard(|| {
        let g = &handle(grid, "grid")?.0;
        if counts.is_null() {
            return Err(null("counts"));
        }
        slice::from_raw_parts_mut(counts, g.dim()).copy_from_slice(g.counts());
        Ok(())
    })
}

/// Writes `dim` spacings into `spacings`.
#[no_mangle]
pub unsafe extern "C" fn ls_grid_spacings(grid: *const LsGrid, spacings: *mut f64) -> LsStatus {
    guard(|| {
        let g = &handle(grid, "grid")?.0;
        if spacings.is_null() {
            return Err(null("spacings"));
        }
        slice::from_raw_parts_mut(spacings, g.dim()).copy_from_slice(g.spacings());
        Ok(())
    })
}

/// Field from `len` column-major values; `len` must equal the node count.
#[no_mangle]
pub unsafe extern "C" fn ls_field_from_data(
    grid: *const LsGrid,
    data: *const f64,
    len: usize,
    out: *mut *mut LsField,
) -> LsStatus {
    guard(|| {
        let g = &handle(grid, "grid")?.0;
        let values = array(data, len, "data")?.to_vec();
        store(
            out,
            LsField(ScalarField::from_column_major(Arc::clone(g), values)?),
        )
    })
}

#[no_mangle]
pub unsafe extern "C" fn ls_field_free(field: *mut LsField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Number of values, or 0 for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn ls_field_len(field: *const LsField) -> usize {
    field.as_ref().map_or(0, |f| f.0.grid().node_count())
}

/// Copies the values, column-major, into `out`, which holds `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn ls_field_copy_data(
    field: *const LsField,
    out: *mut f64,
    len: usize,
) -> LsStatus {
    guard(|| {
        let f = &handle(field, "field")?.0;
        let n = f.grid().node_count();
        if len != n {
            return Err(Failure(
                LsStatus::DimensionMismatch,
                format!("buffer holds {len} values, field has {n}"),
            ));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        slice::from_raw_parts_mut(out, n).copy_from_slice(&f.to_column_major());
        Ok(())
    })
}

/// Signed distance to a sphere (circle in 2-D).
#[no_mangle]
pub unsafe extern "C" fn ls_field_sphere(
    grid: *const LsGrid,
    center: *const f64,
    radius: f64,
    out: *mut *mut LsField,
) -> LsStatus {
    guard(|| {
        let g = &handle(grid, "grid")?.0;
        let c = array(center, g.dim(), "center")?;
        store(
            out,
            LsField(ImplicitSurface::sphere(g, c, radius)?.into_field()),
        )
    })
}

/// Cylinder whose axis runs along every dimension flagged in `ignored`.
#[no_mangle]
pub unsafe extern "C" fn ls_field_cylinder(
    grid: *const LsGrid,
    ignored: *const u8,
    center: *const f64,
    radius: f64,
    out: *mut *mut LsField,
) -> LsStatus {
    guard(|| {
        let g = &handle(grid, "grid")?.0;
        let flags = array(ignored, g.dim(), "ignored")?;
        let dims: Vec<usize> = (0..g.dim()).filter(|&d| flags[d] != 0).collect();
        let c = array(center, g.dim(), "center")?;
        store(
            out,
            LsField(ImplicitSurface::cylinder(g, &dims, c, radius)?.into_field()),
        )
    })
}

/// Axis-aligned box between `lower` and `upper`.
#[no_mangle]
pub unsafe extern "C" fn ls_field_rectangle(
    grid: *const LsGrid,
    lower: *const f64,
    upper: *const f64,
    out: *mut *mut LsField,
) -> LsStatus {
    guard(|| {
        let g = &handle(grid, "grid")?.0;
        let lo = array(lower, g.dim(), "lower")?;
        let hi = array(upper, g.dim(), "upper")?;
        store(
            out,
            LsField(ImplicitSurface::rectangle(g, lo, hi)?.into_field()),
        )
    })
}

unsafe fn surface(field: *const LsField) -> Result<ImplicitSurface, Failure> {
    Ok(ImplicitSurface::from_field(
        handle(field, "field")?.0.clone(),
    )?)
}

/// Pointwise minimum.
#[no_mangle]
pub unsafe extern "C" fn ls_field_union(
    a: *const LsField,
    b: *const LsField,
    out: *mut *mut LsField,
) -> LsStatus {
    guard(|| store(out, LsField(surface(a)?.union(&surface(b)?)?.into_field())))
}

/// Pointwise maximum.
#[no_mangle]
pub unsafe extern "C" fn ls_field_intersection(
    a: *const LsField,
    b: *const LsField,
    out: *mut *mut LsField,
) -> LsStatus {
    guard(|| {
        store(
            out,
            LsField(surface(a)?.intersection(&surface(b)?)?.into_field()),
        )
    })
}

/// Negation.
#[no_mangle]
pub unsafe extern "C" fn ls_field_complement(
    a: *const LsField,
    out: *mut *mut LsField,
) -> LsStatus {
    guard(|| store(out, LsField(surface(a)?.complement().into_field())))
}

/// Left and right one-sided derivatives along `dim`.
#[no_mangle]
pub unsafe extern "C" fn ls_upwind(
    field: *const LsField,
    dim: usize,
    scheme: LsScheme,
    out_left: *mut *mut LsField,
    out_right: *mut *mut LsField,
) -> LsStatus {
    guard(|| {
        let f = &handle(field, "field")?.0;
        if out_left.is_null() || out_right.is_null() {
            return Err(null("output pointer"));
        }
        let d = upwind(f, dim, scheme.into())?;
        store(out_left, LsField(d.left))?;
        store(out_right, LsField(d.right))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ls_snapshot_write(
    path_utf8: *const c_char,
    field: *const LsField,
    time: f64,
) -> LsStatus {
    guard(|| {
        let f = &handle(field, "field")?.0;
        Ok(write_snapshot(path(path_utf8)?, f, time)?)
    })
}

/// Reads a snapshot whose header must describe `grid`.
#[no_mangle]
pub unsafe extern "C" fn ls_snapshot_read(
    path_utf8: *const c_char,
    grid: *const LsGrid,
    out_field: *mut *mut LsField,
    out_time: *mut f64,
) -> LsStatus {
    guard(|| {
        let g = &handle(grid, "grid")?.0;
        if out_time.is_null() {
            return Err(null("out_time"));
        }
        let snap = read_snapshot(path(path_utf8)?)?;
        let field = snap.to_field(g)?;
        store(out_field, LsField(field))?;
        *out_time = snap.time;
        Ok(())
    })
}

/// Solves a built-in problem with its default scheme, third-order
/// Runge-Kutta and the default CFL factor.
#[no_mangle]
pub unsafe extern "C" fn ls_solve(
    problem: LsProblem,
    grid_counts: usize,
    t0: f64,
    tf: f64,
    n_checkpoints: usize,
    out: *mut *mut LsSolution,
) -> LsStatus {
    guard(|| {
        let (p, s) = match problem {
            LsProblem::Rockets => build_rocket_problem(grid_counts, RocketParams::default())?,
            LsProblem::RigidRotation => rigid_rotation_problem(grid_counts)?,
        };
        store(out, LsSolution(solve_brt(&p, &s, (t0, tf), n_checkpoints)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ls_solution_free(solution: *mut LsSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// Number of checkpoints, or 0 for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn ls_solution_checkpoint_count(solution: *const LsSolution) -> usize {
    solution.as_ref().map_or(0, |s| s.0.checkpoints.len())
}

/// Number of time steps taken, or 0 for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn ls_solution_steps(solution: *const LsSolution) -> usize {
    solution.as_ref().map_or(0, |s| s.0.steps.len())
}

/// Time and a copy of the field at checkpoint `index`.
#[no_mangle]
pub unsafe extern "C" fn ls_solution_checkpoint(
    solution: *const LsSolution,
    index: usize,
    out_time: *mut f64,
    out_field: *mut *mut LsField,
) -> LsStatus {
    guard(|| {
        let s = &handle(solution, "solution")?.0;
        let c = s.checkpoints.get(index).ok_or_else(|| {
            Failure(
                LsStatus::InvalidArgument,
                format!(
                    "checkpoint {index} out of range (have {})",
                    s.checkpoints.len()
                ),
            )
        })?;
        if out_time.is_null() {
            return Err(null("out_time"));
        }
        store(out_field, LsField(c.field.clone()))?;
        *out_time = c.time;
        Ok(())
    })
}

/// Shared handle to the grid a field lives on; free it with `ls_grid_free`.
#[no_mangle]
pub unsafe extern "C" fn ls_field_grid(field: *const LsField, out: *mut *mut LsGrid) -> LsStatus {
    guard(|| {
        let f = &handle(field, "field")?.0;
        store(out, LsGrid(Arc::clone(f.grid())))
    })
}
