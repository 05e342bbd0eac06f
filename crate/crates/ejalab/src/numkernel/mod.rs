//! Low-level numerics shared by every other module: quaternion arithmetic,
//! self-adjoint matrices over ℝ/ℂ/ℍ with eigendecomposition, and small
//! dense conic feasibility with certificates.
//!
//! Everything here is pure and deterministic given its inputs; values are
//! immutable after construction and freely shareable across threads.

mod herm;
mod lp;
mod quaternion;

pub use herm::{herm_eig, EigenDecomposition, HermitianMatrix, QMatrix, Ring};
pub use lp::{cone_lp_feasible, dual_cone_generators, in_convex_hull, ConeLp};
pub use quaternion::{quat_mul, Quaternion};

pub(crate) use herm::eig_rank1_split;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumError {
    #[error("eigensolver failed to converge (input norm {norm:.3e})")]
    EigenNonConvergence { norm: f64 },
    #[error("degenerate generator set: no nonzero generators")]
    DegenerateGenerators,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("quaternionic embedding produced inconsistent blocks (residual {residual:.3e})")]
    EmbeddingInconsistent { residual: f64 },
    #[error("simplex exceeded its iteration budget")]
    SimplexStalled,
}
