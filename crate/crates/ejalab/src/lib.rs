//! ejalab — a verification workbench for finite-dimensional probabilistic
//! models and euclidean Jordan algebras.
//!
//! The library constructs concrete instances of the structures that show up
//! in the order-theoretic reconstruction of quantum theory — test spaces,
//! state polytopes, the ordered spaces `V(A)`/`V*(A)`/`E(A)`, the simple
//! euclidean Jordan algebra families, conjugate systems with their
//! correlators, filters, non-signaling joint states, and the dagger-compact
//! tensor machinery — and machine-checks every construction and identity on
//! those instances at controlled numerical tolerances.
//!
//! Modules mirror the layers of the theory:
//!
//! - [`numkernel`] — quaternions, self-adjoint matrices over ℝ/ℂ/ℍ,
//!   eigendecompositions, and small dense conic feasibility with
//!   certificates.
//! - [`testspace`] — finite test spaces, probability weights, state
//!   polytopes, and symmetry-based sharpening.
//! - [`ordered`] — the ordered coordinate spaces of a model, effects,
//!   processes and their duals, probabilistic reversibility.
//! - [`jordan`] — the four implemented simple families plus direct sums,
//!   spectral decomposition, quadratic representations, functional calculus,
//!   frames, and the induced probabilistic model.
//! - [`conjugate`] — conjugate pairs with the correlator η, self-dualizing
//!   inner-product checks, filters, spectrality and correlation conditions,
//!   bit-ball geometry.
//! - [`composite`] — joint states, marginals and conditioning, the maximal
//!   tensor product at desk scale, and the non-signaling box.
//! - [`category`] — units/counits on tensor effect spaces, snake equations,
//!   daggers and dual morphisms, local-tomography dimension counts.
//! - [`suites`], [`report`] — named check suites and the structured,
//!   reproducible verification report consumed by the CLI.


pub mod category;
pub mod composite;
pub mod conjugate;
pub mod jordan;
pub mod modelfile;
pub mod numkernel;
pub mod ordered;
pub mod report;
pub mod suites;
pub mod testspace;
pub mod tol;

pub use report::{CheckResult, CheckStatus, VerificationReport};
pub use tol::Tolerances;
