//! Canonical spectral decompositions and the functional calculus built on
//! them.
//!
//! The canonical form keeps only the *distinct nonzero* eigenvalues, in
//! strictly descending order, each with its sharp effect (the sum of the
//! frame primitives carrying that eigenvalue); the zero eigenspace is
//! tracked separately so the functional calculus can re-insert `f(0)`.

use nalgebra::DVector;

use super::{JordanAlgebra, JordanError};
use crate::tol::Tolerances;

/// The unique expansion `a = Σ tᵢ pᵢ` with `t₀ > t₁ > … > t_k` nonzero and
/// the `pᵢ` jointly orthogonal sharp effects.
#[derive(Debug, Clone)]
pub struct CanonicalSpectral {
    /// Distinct nonzero eigenvalues, strictly descending.
    pub eigenvalues: Vec<f64>,
    /// Sharp effects (sums of orthogonal primitive idempotents).
    pub effects: Vec<DVector<f64>>,
    /// Projector onto the zero eigenspace, `u − Σ pᵢ` (possibly zero).
    pub kernel: DVector<f64>,
}

impl CanonicalSpectral {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `Σ tᵢ pᵢ` (the zero eigenspace contributes nothing).
    pub fn reconstruct(&self, dim: usize) -> DVector<f64> {
        let mut out = DVector::zeros(dim);
        for (t, p) in self.eigenvalues.iter().zip(&self.effects) {
            out += p * *t;
        }
        out
    }

    /// Multiplicity of the zero eigenvalue, read off the kernel trace.
    pub fn kernel_multiplicity(&self, j: &JordanAlgebra) -> usize {
        self.kernel.dot(j.unit()).round().max(0.0) as usize
    }
}

pub(super) fn decompose(
    j: &JordanAlgebra,
    a: &DVector<f64>,
    tols: &Tolerances,
) -> Result<CanonicalSpectral, JordanError> {
    let frame = j.eigenframe(a)?;
    let scale = a.norm().max(1.0);
    let gap = tols.eigen_merge * scale;

    let mut eigenvalues: Vec<f64> = Vec::new();
    let mut effects: Vec<DVector<f64>> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for (t, x) in frame {
        match eigenvalues.last().copied() {
            Some(prev) if (prev - t).abs() <= gap => {
                let k = eigenvalues.len() - 1;
                *effects.last_mut().unwrap() += x;
                counts[k] += 1;
                // running mean keeps the merged eigenvalue centred
                eigenvalues[k] = (eigenvalues[k] * (counts[k] - 1) as f64 + t) / counts[k] as f64;
            }
            _ => {
                eigenvalues.push(t);
                effects.push(x);
                counts.push(1);
            }
        }
    }

    // drop (numerically) zero eigenvalues into the kernel
    let mut kept_values = Vec::new();
    let mut kept_effects = Vec::new();
    let mut kernel = j.unit().clone();
    for (t, p) in eigenvalues.into_iter().zip(effects) {
        if t.abs() > gap {
            kernel -= &p;
            kept_values.push(t);
            kept_effects.push(p);
        }
    }
    Ok(CanonicalSpectral {
        eigenvalues: kept_values,
        effects: kept_effects,
        kernel,
    })
}

/// Two canonical decompositions agree term by term: same length, matching
/// eigenvalues and matching sharp effects. This operationalizes uniqueness
/// of the canonical form.
pub fn canonical_equal(
    _j: &JordanAlgebra,
    d1: &CanonicalSpectral,
    d2: &CanonicalSpectral,
    tol: f64,
) -> bool {
    if d1.len() != d2.len() {
        return false;
    }
    d1.eigenvalues
        .iter()
        .zip(&d2.eigenvalues)
        .all(|(a, b)| (a - b).abs() <= tol)
        && d1
            .effects
            .iter()
            .zip(&d2.effects)
            .all(|(p, q)| (p - q).norm() <= tol)
}

pub(super) fn functional_calculus(
    j: &JordanAlgebra,
    a: &DVector<f64>,
    f: impl Fn(f64) -> f64,
    tols: &Tolerances,
) -> Result<DVector<f64>, JordanError> {
    let dec = decompose(j, a, tols)?;
    let mut out = DVector::zeros(j.dim());
    for (t, p) in dec.eigenvalues.iter().zip(&dec.effects) {
        let v = f(*t);
        if !v.is_finite() {
            return Err(JordanError::FunctionDomain { eigenvalue: *t });
        }
        out += p * v;
    }
    if dec.kernel_multiplicity(j) > 0 {
        let v = f(0.0);
        if !v.is_finite() {
            return Err(JordanError::FunctionDomain { eigenvalue: 0.0 });
        }
        out += &dec.kernel * v;
    }
    Ok(out)
}
