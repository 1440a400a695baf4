//! Planar four-body central configurations in Dziobek coordinates.
//!
//! The crate is organised bottom-up:
//!
//! - [`dziobek`]: masses, squared distances, the Cayley–Menger determinant,
//!   the six central-configuration equations and the balanced-configuration
//!   identities.
//! - [`geometry`]: planar configurations, oriented areas, realization of a
//!   distance set in the plane and canonical frames for deduplication.
//! - [`solver`]: damped Newton on the Dziobek system, the kite and rhombus
//!   reductions, and mass-parameter sweeps.
//! - [`census`]: seed-grid search counting convex central configurations up to
//!   similarity.
//! - [`verifier`]: the direct Newtonian check and executable forms of the
//!   supporting inequalities.
//!
//! Masses are `(δ, δ, α, β)` with the equal pair on one diagonal (bodies 1 and
//! 2) and bodies 3 and 4 on the other. Most entry points assume `δ = 1`.

pub mod census;
pub mod dziobek;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod io;
pub mod json;
pub mod solver;
pub mod verifier;

pub use census::{census, classify_symmetry, seed_grid, CensusClass, CensusReport, SymmetryLabel};
pub use dziobek::{DziobekState, MassVector, PsiValues, ResidualVector, SquaredDistances};
pub use error::{Error, Result};
pub use exec::Execution;
pub use geometry::{CanonicalFrame, OrientedAreas, PlanarConfig};
pub use solver::{
    linear_grid, newton_solve, solve_kite, solve_rhombus, sweep, Normalization, SolveOptions, SolveReport,
    SweepCell, SweepTable,
};
pub use verifier::CheckResult;
