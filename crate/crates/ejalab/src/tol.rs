//! Numeric policy: every tolerance used by the checks, in one place.
//!
//! Three tolerances are user-visible and overridable from the CLI
//! (`--tol-alg`, `--tol-eig`, `--tol-lp`); the remaining constants are
//! fixed implementation thresholds that individual checks cite directly.

/// Tolerance for algebraic identities (products, reconstructions,
/// adjointness). Sized for a handful of dense mat-mat products at rank ≤ 8
/// in f64.
pub const ALGEBRAIC: f64 = 1e-9;

/// Absolute eigenvalue-merge tolerance, applied after rescaling the input
/// to unit norm. Looser than [`ALGEBRAIC`] because eigenvector conditioning
/// degrades near degeneracy even when eigenvalues are accurate.
pub const EIGEN_MERGE: f64 = 1e-7;

/// Feasibility tolerance for the dense simplex used in cone-membership
/// queries.
pub const LP: f64 = 1e-10;

/// Probability-weight normalization must hold essentially exactly: the
/// sums involved have at most ~20 terms.
pub const NORMALIZATION: f64 = 1e-12;

/// Polytope vertices closer than this are considered the same vertex.
pub const VERTEX_DEDUP: f64 = 1e-10;

/// Conjugate correlator conditions (η(x, x̄) = 1/n and friends).
pub const CORRELATOR: f64 = 1e-10;

/// Cone transport in the homogeneity check composes two quadratic
/// representations, one of them built from an inverse square root, so it
/// gets an extra order of magnitude.
pub const HOMOGENEITY: f64 = 1e-8;

/// Lower bound demanded of the smallest eigenvalue of sampled correlator
/// Gram matrices.
pub const GRAM_MIN_EIG: f64 = 1e-8;

/// Basis-independence of the compact-structure unit vector.
pub const BASIS_INDEPENDENCE: f64 = 1e-10;

/// The three user-overridable tolerances, bundled for plumbing through
/// suites and the CLI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Algebraic identities; defaults to [`ALGEBRAIC`].
    pub algebraic: f64,
    /// Eigenvalue merging; defaults to [`EIGEN_MERGE`].
    pub eigen_merge: f64,
    /// LP feasibility; defaults to [`LP`].
    pub lp: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            algebraic: ALGEBRAIC,
            eigen_merge: EIGEN_MERGE,
            lp: LP,
        }
    }
}
