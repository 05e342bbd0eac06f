//! The probabilistic model carried by a euclidean Jordan algebra: outcomes
//! are primitive idempotents, tests are frames, and states are positive
//! unit-trace elements evaluated through the inner product.
//!
//! The outcome set and test set are infinite, so the model is *implicit*:
//! an outcome oracle, a test sampler, and algebraic cone checks stand in
//! for the finite lists a polytope model carries.

use nalgebra::DVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{JordanAlgebra, JordanError, JordanFrame};
use crate::ordered::StateCone;

#[derive(Debug, Clone)]
pub struct JordanModel {
    pub algebra: JordanAlgebra,
}

impl JordanModel {
    pub fn new(algebra: JordanAlgebra) -> Self {
        JordanModel { algebra }
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    /// Outcome oracle.
    pub fn is_outcome(&self, p: &DVector<f64>, tol: f64) -> bool {
        self.algebra.is_primitive_idempotent(p, tol)
    }

    /// Test sampler.
    pub fn random_test<R: Rng>(&self, rng: &mut R) -> Result<JordanFrame, JordanError> {
        self.algebra.random_frame(rng)
    }

    /// The state `α(p) = ⟨a, p⟩` exists iff `a` is positive with unit
    /// trace; returns the (renormalized) representing vector.
    pub fn state_from_positive(&self, a: &DVector<f64>, tol: f64) -> Result<DVector<f64>, JordanError> {
        let min_eig = self.algebra.min_eigenvalue(a)?;
        if min_eig < -tol * a.norm().max(1.0) {
            return Err(JordanError::NotPositive { min_eig });
        }
        let trace = a.dot(self.algebra.unit());
        if trace <= 0.0 {
            return Err(JordanError::NotPositive { min_eig });
        }
        Ok(a / trace)
    }

    pub fn is_state(&self, a: &DVector<f64>, tol: f64) -> bool {
        self.algebra
            .min_eigenvalue(a)
            .map(|m| m >= -tol * a.norm().max(1.0))
            .unwrap_or(false)
            && (a.dot(self.algebra.unit()) - 1.0).abs() <= tol
    }

    /// Probability of outcome `p` in state `a`.
    pub fn eval(&self, a: &DVector<f64>, p: &DVector<f64>) -> f64 {
        a.dot(p)
    }

    /// `u/n`.
    pub fn maximally_mixed(&self) -> DVector<f64> {
        self.algebra.unit() / self.algebra.rank() as f64
    }

    pub fn random_state<R: Rng>(&self, rng: &mut R) -> DVector<f64> {
        loop {
            let sq = self.algebra.random_positive(rng);
            let trace = sq.dot(self.algebra.unit());
            if trace > 1e-6 {
                return sq / trace;
            }
        }
    }

    /// A state bounded away from the boundary of the cone.
    pub fn random_interior_state<R: Rng>(&self, rng: &mut R) -> DVector<f64> {
        let a = self.algebra.random_interior(rng);
        &a / a.dot(self.algebra.unit())
    }
}

impl StateCone for JordanModel {
    fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Deterministic probes: a fixed-seed batch of random states plus the
    /// maximally mixed state and one frame's primitives.
    fn state_probes(&self) -> Vec<DVector<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(0xE1A);
        let mut probes = vec![self.maximally_mixed()];
        if let Ok(frame) = self.algebra.random_frame(&mut rng) {
            probes.extend(frame.elements);
        }
        for _ in 0..24 {
            probes.push(self.random_state(&mut rng));
        }
        probes
    }

    fn in_positive_cone(&self, v: &DVector<f64>, tol: f64) -> bool {
        self.algebra
            .min_eigenvalue(v)
            .map(|m| m >= -tol * v.norm().max(1.0))
            .unwrap_or(false)
    }

    fn max_over_states(&self, f: &DVector<f64>) -> f64 {
        // sup over unit-trace positive a of ⟨f,a⟩ is the top eigenvalue
        self.algebra
            .eigenvalues(f)
            .map(|e| e[0])
            .unwrap_or(f64::NAN)
    }

    fn unit_functional(&self) -> DVector<f64> {
        self.algebra.unit().clone()
    }
}
