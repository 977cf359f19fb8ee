//! Level-set methods for time-dependent Hamilton-Jacobi equations on uniform
//! Cartesian grids.
//!
//! A value function `v` lives on a [`Grid`] as a [`ScalarField`]. Upwind
//! one-sided derivatives ([`derivatives`]) feed a Lax-Friedrichs numerical
//! Hamiltonian ([`hamiltonian`]), which is advanced in time by a TVD
//! Runge-Kutta integrator ([`integrator`]) under a CFL restriction.
//!
//! ```
//! use levelset::problems::{rigid_rotation_problem, solve_brt};
//!
//! let (problem, circle) = rigid_rotation_problem(21).unwrap();
//! let sol = solve_brt(&problem, &circle, (0.0, 0.1), 2).unwrap();
//! assert_eq!(sol.checkpoints.len(), 2);
//! assert_eq!(sol.checkpoints[1].time, 0.1);
//! ```

pub mod config;
pub mod contour;
pub mod derivatives;
pub mod error;
pub mod grid;
pub mod hamiltonian;
pub mod implicit;
pub mod integrator;
pub mod problems;
pub mod report;
pub mod runner;
pub mod snapshot;

pub use derivatives::{upwind, DerivativePair, Scheme};
pub use error::{Error, Result};
pub use grid::{pad_ghost, shift_along_dim, BoundaryCondition, Grid, ScalarField};
pub use hamiltonian::{
    term_lax_friedrichs, Hamiltonian, HamiltonianProblem, Term, TermResult, UpdateDirection,
};
pub use implicit::ImplicitSurface;
pub use integrator::{integrate, IntegratorOptions, TimeScheme};
pub use report::RunReport;
pub use snapshot::{read_snapshot, write_snapshot, Snapshot};
