//! Self-adjoint matrices over ℝ, ℂ and ℍ, with eigendecomposition into
//! eigenvalues and orthogonal eigenprojectors.
//!
//! All three rings share one storage type: entries are quaternions, with the
//! ring tag restricting which components may be nonzero. Self-adjointness is
//! exact by construction — only the strict lower triangle and the (real)
//! diagonal are stored.
//!
//! The quaternionic eigensolve goes through the symplectic embedding
//! ℍ → M₂(ℂ); eigenvalues of the embedded matrix come in pairs, which are
//! collapsed back to quaternionic eigenspaces.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::quaternion::Quaternion;
use super::NumError;

/// Scalar ring of a matrix algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ring {
    Real,
    Complex,
    Quaternion,
}

impl Ring {
    /// Real dimension of the space of n×n self-adjoint matrices over the ring.
    pub fn herm_dim(self, n: usize) -> usize {
        let off = n * (n - 1) / 2;
        match self {
            Ring::Real => n + off,
            Ring::Complex => n + 2 * off,
            Ring::Quaternion => n + 4 * off,
        }
    }

    fn admits(self, q: Quaternion, tol: f64) -> bool {
        match self {
            Ring::Real => q.is_real(tol),
            Ring::Complex => q.is_complex(tol),
            Ring::Quaternion => true,
        }
    }
}

/// A self-adjoint matrix over [`Ring`]; `entry(j,i) = conj(entry(i,j))`
/// holds exactly because only one triangle is stored.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    ring: Ring,
    n: usize,
    diag: Vec<f64>,
    /// Strict lower triangle, row-major: `(i,j)` with `i > j` at
    /// `i(i-1)/2 + j`.
    lower: Vec<Quaternion>,
}

impl HermitianMatrix {
    pub fn zeros(ring: Ring, n: usize) -> Self {
        HermitianMatrix {
            ring,
            n,
            diag: vec![0.0; n],
            lower: vec![Quaternion::ZERO; n * (n - 1) / 2],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n);
        m.diag.iter_mut().for_each(|d| *d = 1.0);
        m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn lower_index(i: usize, j: usize) -> usize {
        debug_assert!(i > j);
        i * (i - 1) / 2 + j
    }

    /// Set entry `(i, j)` (and implicitly its adjoint partner).
    ///
    /// Panics if the value is outside the scalar ring, or if a diagonal
    /// entry has an imaginary part.
    pub fn set(&mut self, i: usize, j: usize, q: Quaternion) {
        assert!(i < self.n && j < self.n);
        assert!(
            self.ring.admits(q, 0.0),
            "entry {q:?} not in ring {:?}",
            self.ring
        );
        if i == j {
            assert!(q.is_real(0.0), "diagonal entry must be real, got {q:?}");
            self.diag[i] = q.w;
        } else if i > j {
            self.lower[Self::lower_index(i, j)] = q;
        } else {
            self.lower[Self::lower_index(j, i)] = q.conj();
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Quaternion {
        assert!(i < self.n && j < self.n);
        if i == j {
            Quaternion::real(self.diag[i])
        } else if i > j {
            self.lower[Self::lower_index(i, j)]
        } else {
            self.lower[Self::lower_index(j, i)].conj()
        }
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut s: f64 = self.diag.iter().map(|d| d * d).sum();
        s += 2.0 * self.lower.iter().map(|q| q.norm_sqr()).sum::<f64>();
        s.sqrt()
    }

    /// Real part of the trace inner product, `Re Tr(ab)`.
    pub fn inner(&self, other: &HermitianMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        let mut s: f64 = self
            .diag
            .iter()
            .zip(&other.diag)
            .map(|(a, b)| a * b)
            .sum();
        // off-diagonal (i,j) and (j,i) contribute Re(q p̄) each
        s += 2.0
            * self
                .lower
                .iter()
                .zip(&other.lower)
                .map(|(q, p)| q.w * p.w + q.x * p.x + q.y * p.y + q.z * p.z)
                .sum::<f64>();
        s
    }

    pub fn scale(&self, t: f64) -> HermitianMatrix {
        let mut m = self.clone();
        m.diag.iter_mut().for_each(|d| *d *= t);
        m.lower.iter_mut().for_each(|q| *q = q.scale(t));
        m
    }

    pub fn add(&self, other: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(self.n, other.n);
        let mut m = self.clone();
        for (d, e) in m.diag.iter_mut().zip(&other.diag) {
            *d += e;
        }
        for (q, p) in m.lower.iter_mut().zip(&other.lower) {
            *q += *p;
        }
        m
    }

    pub fn sub(&self, other: &HermitianMatrix) -> HermitianMatrix {
        self.add(&other.scale(-1.0))
    }

    pub fn to_dense(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }

    /// Real symmetric matrix view; valid for the real ring only.
    pub fn to_real(&self) -> DMatrix<f64> {
        assert_eq!(self.ring, Ring::Real);
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j).w)
    }

    /// Complex Hermitian view; valid for the real and complex rings.
    pub fn to_complex(&self) -> DMatrix<Complex64> {
        assert_ne!(self.ring, Ring::Quaternion);
        DMatrix::from_fn(self.n, self.n, |i, j| {
            let q = self.get(i, j);
            Complex64::new(q.w, q.x)
        })
    }

    /// Symplectic embedding ℍ → M₂(ℂ) applied entrywise; produces a 2n×2n
    /// complex Hermitian matrix. Valid for any ring.
    pub fn to_embedded_complex(&self) -> DMatrix<Complex64> {
        let n = self.n;
        let mut m = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let (a, b) = self.get(i, j).complex_parts();
                m[(2 * i, 2 * j)] = a;
                m[(2 * i, 2 * j + 1)] = b;
                m[(2 * i + 1, 2 * j)] = -b.conj();
                m[(2 * i + 1, 2 * j + 1)] = a.conj();
            }
        }
        m
    }

    /// Inverse of [`HermitianMatrix::to_embedded_complex`]. Fails if the
    /// input does not have (near-)symplectic block structure or leaves the
    /// ring.
    pub fn from_embedded_complex(
        ring: Ring,
        m: &DMatrix<Complex64>,
        tol: f64,
    ) -> Result<HermitianMatrix, NumError> {
        let n2 = m.nrows();
        assert_eq!(n2 % 2, 0);
        let n = n2 / 2;
        let mut out = HermitianMatrix::zeros(ring, n);
        let mut residual: f64 = 0.0;
        for i in 0..n {
            for j in 0..=i {
                let a0 = m[(2 * i, 2 * j)];
                let b0 = m[(2 * i, 2 * j + 1)];
                let c0 = m[(2 * i + 1, 2 * j)];
                let d0 = m[(2 * i + 1, 2 * j + 1)];
                let a = (a0 + d0.conj()) * 0.5;
                let b = (b0 - c0.conj()) * 0.5;
                residual = residual
                    .max((a0 - d0.conj()).norm())
                    .max((b0 + c0.conj()).norm());
                let mut q = Quaternion::from_complex_parts(a, b);
                if i == j {
                    residual = residual.max(q.x.abs()).max(q.y.abs()).max(q.z.abs());
                    q = Quaternion::real(q.w);
                }
                if !ring.admits(q, tol) {
                    return Err(NumError::EmbeddingInconsistent { residual: 1.0 });
                }
                // project exactly onto the ring
                let q = match ring {
                    Ring::Real => Quaternion::real(q.w),
                    Ring::Complex => Quaternion::new(q.w, q.x, 0.0, 0.0),
                    Ring::Quaternion => q,
                };
                out.set(i, j, q);
            }
        }
        if residual > tol {
            return Err(NumError::EmbeddingInconsistent { residual });
        }
        Ok(out)
    }
}

/// Dense quaternionic matrix used for intermediate (non-self-adjoint)
/// products.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    n: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(n: usize) -> Self {
        QMatrix {
            n,
            data: vec![Quaternion::ZERO; n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Quaternion {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, q: Quaternion) {
        self.data[i * self.n + j] = q;
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.n, other.n);
        let mut out = QMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = Quaternion::ZERO;
                for k in 0..self.n {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += *b;
        }
        out
    }

    pub fn scale(&self, t: f64) -> QMatrix {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|q| *q = q.scale(t));
        out
    }

    /// Project onto self-adjoint matrices over `ring` by averaging with the
    /// conjugate transpose. The projection distance is returned alongside.
    pub fn to_hermitian(&self, ring: Ring) -> (HermitianMatrix, f64) {
        let mut out = HermitianMatrix::zeros(ring, self.n);
        let mut dist: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..=i {
                let avg = (self.get(i, j) + self.get(j, i).conj()).scale(0.5);
                dist = dist.max((self.get(i, j) - avg).norm());
                let q = match ring {
                    Ring::Real => Quaternion::real(avg.w),
                    Ring::Complex => Quaternion::new(avg.w, avg.x, 0.0, 0.0),
                    Ring::Quaternion => avg,
                };
                dist = dist.max((avg - q).norm());
                let q = if i == j { Quaternion::real(q.w) } else { q };
                out.set(i, j, q);
            }
        }
        (out, dist)
    }
}

/// Eigendecomposition into descending eigenvalues and eigenspace
/// projectors (one projector per merged eigenvalue).
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Distinct (merged) eigenvalues, strictly descending.
    pub eigenvalues: Vec<f64>,
    /// Orthogonal projections onto the corresponding eigenspaces.
    pub projectors: Vec<HermitianMatrix>,
}

impl EigenDecomposition {
    /// `Σ λᵢ Pᵢ`.
    pub fn reconstruct(&self, ring: Ring, n: usize) -> HermitianMatrix {
        let mut acc = HermitianMatrix::zeros(ring, n);
        for (t, p) in self.eigenvalues.iter().zip(&self.projectors) {
            acc = acc.add(&p.scale(*t));
        }
        acc
    }
}

/// One (eigenvalue, rank-one projector) pair per line of the spectrum,
/// counted with multiplicity over the ring. For the quaternion ring a
/// "rank one" projector means rank one over ℍ.
pub(crate) fn eig_rank1_split(
    m: &HermitianMatrix,
) -> Result<Vec<(f64, HermitianMatrix)>, NumError> {
    let norm = m.frobenius_norm();
    let fail = || NumError::EigenNonConvergence { norm };
    const MAX_ITER: usize = 50_000;
    match m.ring() {
        Ring::Real => {
            let se = m
                .to_real()
                .try_symmetric_eigen(f64::EPSILON, MAX_ITER)
                .ok_or_else(fail)?;
            let mut out: Vec<(f64, HermitianMatrix)> = Vec::with_capacity(m.dim());
            for k in 0..m.dim() {
                let v: DVector<f64> = se.eigenvectors.column(k).into();
                let mut p = HermitianMatrix::zeros(Ring::Real, m.dim());
                for i in 0..m.dim() {
                    for j in 0..=i {
                        p.set(i, j, Quaternion::real(v[i] * v[j]));
                    }
                }
                out.push((se.eigenvalues[k], p));
            }
            out.sort_by(|a, b| b.0.total_cmp(&a.0));
            Ok(out)
        }
        Ring::Complex => {
            let se = m
                .to_complex()
                .try_symmetric_eigen(f64::EPSILON, MAX_ITER)
                .ok_or_else(fail)?;
            let mut out: Vec<(f64, HermitianMatrix)> = Vec::with_capacity(m.dim());
            for k in 0..m.dim() {
                let v: DVector<Complex64> = se.eigenvectors.column(k).into();
                let mut p = HermitianMatrix::zeros(Ring::Complex, m.dim());
                for i in 0..m.dim() {
                    for j in 0..=i {
                        let e = v[i] * v[j].conj();
                        let e = if i == j { Complex64::new(e.re, 0.0) } else { e };
                        p.set(i, j, Quaternion::from_complex(e));
                    }
                }
                out.push((se.eigenvalues[k], p));
            }
            out.sort_by(|a, b| b.0.total_cmp(&a.0));
            Ok(out)
        }
        Ring::Quaternion => quat_rank1_split(m),
    }
}

/// Apply the quaternionic structure map `v ↦ Ω v̄` of the symplectic
/// embedding (Ω is block-diagonal with 2×2 blocks [[0,1],[-1,0]]).
fn structure_map(v: &DVector<Complex64>) -> DVector<Complex64> {
    let n2 = v.len();
    let mut w = DVector::<Complex64>::zeros(n2);
    for i in 0..n2 / 2 {
        w[2 * i] = v[2 * i + 1].conj();
        w[2 * i + 1] = -v[2 * i].conj();
    }
    w
}

fn quat_rank1_split(m: &HermitianMatrix) -> Result<Vec<(f64, HermitianMatrix)>, NumError> {
    let norm = m.frobenius_norm();
    let embedded = m.to_embedded_complex();
    let se = embedded
        .try_symmetric_eigen(f64::EPSILON, 50_000)
        .ok_or(NumError::EigenNonConvergence { norm })?;

    let mut pool: Vec<(f64, DVector<Complex64>)> = (0..2 * m.dim())
        .map(|k| (se.eigenvalues[k], se.eigenvectors.column(k).into()))
        .collect();
    pool.sort_by(|a, b| b.0.total_cmp(&a.0));

    let herm_dot = |a: &DVector<Complex64>, b: &DVector<Complex64>| -> Complex64 {
        a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
    };

    let mut out = Vec::with_capacity(m.dim());
    while let Some((lambda, v)) = pool.first().cloned() {
        pool.remove(0);
        // partner direction inside the same eigenspace
        let w = structure_map(&v);
        // rank-one-over-ℍ projector = vv† + ww† on the embedded space
        let proj = |a: &DVector<Complex64>, i: usize, j: usize| a[i] * a[j].conj();
        let n2 = 2 * m.dim();
        let mut p = DMatrix::<Complex64>::zeros(n2, n2);
        for i in 0..n2 {
            for j in 0..n2 {
                p[(i, j)] = proj(&v, i, j) + proj(&w, i, j);
            }
        }
        // remove the span of {v, w} from the remaining pool
        for (_, u) in pool.iter_mut() {
            let cv = herm_dot(u, &v);
            let cw = herm_dot(u, &w);
            *u -= &v * cv + &w * cw;
        }
        // drop the (single) vector that collapsed, re-orthonormalize the rest
        pool.sort_by(|a, b| herm_dot(&b.1, &b.1).re.total_cmp(&herm_dot(&a.1, &a.1).re));
        if let Some(last) = pool.pop() {
            let dropped_norm = herm_dot(&last.1, &last.1).re.sqrt();
            if dropped_norm > 0.5 {
                // the quaternionic pairing failed to collapse a direction
                return Err(NumError::EmbeddingInconsistent {
                    residual: dropped_norm,
                });
            }
        }
        for k in 0..pool.len() {
            let (head, tail) = pool.split_at_mut(k);
            let (_, u) = &mut tail[0];
            for (_, prev) in head.iter() {
                let c = herm_dot(u, prev);
                *u -= prev * c;
            }
            let nn = herm_dot(u, u).re.sqrt();
            if nn < 1e-8 {
                return Err(NumError::EmbeddingInconsistent { residual: nn });
            }
            *u /= Complex64::new(nn, 0.0);
        }
        // restore descending eigenvalue order for the next pick
        pool.sort_by(|a, b| b.0.total_cmp(&a.0));
        let hp = HermitianMatrix::from_embedded_complex(Ring::Quaternion, &p, 1e-7 * norm.max(1.0))?;
        out.push((lambda, hp));
    }
    Ok(out)
}

/// Eigendecomposition with eigenvalue merging.
///
/// Eigenvalues within `tol_merge · max(1, ‖m‖)` of each other are collapsed
/// into a single eigenvalue (their mean) with the summed projector, so the
/// reported eigenvalues are strictly descending.
pub fn herm_eig(m: &HermitianMatrix, tol_merge: f64) -> Result<EigenDecomposition, NumError> {
    let split = eig_rank1_split(m)?;
    let scale = m.frobenius_norm().max(1.0);
    let gap = tol_merge * scale;

    let mut eigenvalues: Vec<f64> = Vec::new();
    let mut projectors: Vec<HermitianMatrix> = Vec::new();
    let mut members: Vec<usize> = Vec::new();
    let mut acc_sum = 0.0;
    for (idx, (lambda, p)) in split.into_iter().enumerate() {
        let start_new = idx == 0 || {
            let prev = acc_sum / members.len() as f64;
            (prev - lambda).abs() > gap
        };
        if start_new {
            eigenvalues.push(lambda);
            projectors.push(p);
            members = vec![idx];
            acc_sum = lambda;
        } else {
            let last = projectors.last_mut().unwrap();
            *last = last.add(&p);
            members.push(idx);
            acc_sum += lambda;
            *eigenvalues.last_mut().unwrap() = acc_sum / members.len() as f64;
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        projectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_herm(ring: Ring, n: usize, rng: &mut ChaCha8Rng) -> HermitianMatrix {
        let mut m = HermitianMatrix::zeros(ring, n);
        let mut val = |rng: &mut ChaCha8Rng| rng.random::<f64>() * 2.0 - 1.0;
        for i in 0..n {
            m.set(i, i, Quaternion::real(val(rng)));
            for j in 0..i {
                let q = match ring {
                    Ring::Real => Quaternion::real(val(rng)),
                    Ring::Complex => Quaternion::new(val(rng), val(rng), 0.0, 0.0),
                    Ring::Quaternion => {
                        Quaternion::new(val(rng), val(rng), val(rng), val(rng))
                    }
                };
                m.set(i, j, q);
            }
        }
        m
    }

    fn check_decomposition(m: &HermitianMatrix, dec: &EigenDecomposition) {
        let n = m.dim();
        // projectors idempotent, pairwise orthogonal, summing to identity
        let mut sum = HermitianMatrix::zeros(m.ring(), n);
        for (i, p) in dec.projectors.iter().enumerate() {
            let pd = p.to_dense();
            let (sq, _) = pd.mul(&pd).to_hermitian(m.ring());
            assert!(sq.sub(p).frobenius_norm() < 1e-9, "not idempotent");
            for q in dec.projectors.iter().skip(i + 1) {
                let prod = pd.mul(&q.to_dense());
                let norm: f64 = (0..n)
                    .flat_map(|r| (0..n).map(move |c| (r, c)))
                    .map(|(r, c)| prod.get(r, c).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(norm < 1e-9, "projectors not orthogonal: {norm}");
            }
            sum = sum.add(p);
        }
        assert!(
            sum.sub(&HermitianMatrix::identity(m.ring(), n)).frobenius_norm() < 1e-9,
            "projectors do not sum to identity"
        );
        let recon = dec.reconstruct(m.ring(), n);
        assert!(
            recon.sub(m).frobenius_norm() <= 1e-9 * m.frobenius_norm().max(1.0),
            "reconstruction failed"
        );
        for w in dec.eigenvalues.windows(2) {
            assert!(w[0] > w[1], "eigenvalues not strictly descending");
        }
    }

    #[test]
    fn identity_complex_single_projector() {
        let m = HermitianMatrix::identity(Ring::Complex, 3);
        let dec = herm_eig(&m, tol::EIGEN_MERGE).unwrap();
        assert_eq!(dec.eigenvalues.len(), 1);
        assert!((dec.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!(
            dec.projectors[0]
                .sub(&HermitianMatrix::identity(Ring::Complex, 3))
                .frobenius_norm()
                < 1e-9
        );
    }

    #[test]
    fn real_diagonal() {
        let mut m = HermitianMatrix::zeros(Ring::Real, 2);
        m.set(0, 0, Quaternion::real(2.0));
        m.set(1, 1, Quaternion::real(1.0));
        let dec = herm_eig(&m, tol::EIGEN_MERGE).unwrap();
        assert_eq!(dec.eigenvalues, vec![2.0, 1.0]);
        assert!((dec.projectors[0].get(0, 0).w - 1.0).abs() < 1e-12);
        assert!(dec.projectors[0].get(1, 1).w.abs() < 1e-12);
        assert!((dec.projectors[1].get(1, 1).w - 1.0).abs() < 1e-12);
    }

    /// [[0, j], [-j, 0]] has eigenvalues ±1 with projectors of quaternionic
    /// rank one; the complex embedding is the oracle.
    #[test]
    fn quaternionic_two_by_two() {
        let mut m = HermitianMatrix::zeros(Ring::Quaternion, 2);
        m.set(1, 0, Quaternion::J.conj()); // entry (1,0) = -j, so (0,1) = j
        assert_eq!(m.get(0, 1), Quaternion::J);
        let dec = herm_eig(&m, tol::EIGEN_MERGE).unwrap();
        assert_eq!(dec.eigenvalues.len(), 2);
        assert!((dec.eigenvalues[0] - 1.0).abs() < 1e-9);
        assert!((dec.eigenvalues[1] + 1.0).abs() < 1e-9);
        for p in &dec.projectors {
            assert!((p.trace() - 1.0).abs() < 1e-9, "projector not rank one over ℍ");
        }
        check_decomposition(&m, &dec);
    }

    #[test]
    fn random_inputs_all_rings() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for ring in [Ring::Real, Ring::Complex, Ring::Quaternion] {
            for n in 1..=8 {
                let m = random_herm(ring, n, &mut rng);
                let dec = herm_eig(&m, tol::EIGEN_MERGE).unwrap();
                check_decomposition(&m, &dec);
            }
        }
    }

    #[test]
    fn degenerate_spectrum_merges() {
        // diag(1, 1, 0) over ℂ: two distinct eigenvalues
        let mut m = HermitianMatrix::zeros(Ring::Complex, 3);
        m.set(0, 0, Quaternion::real(1.0));
        m.set(1, 1, Quaternion::real(1.0));
        let dec = herm_eig(&m, tol::EIGEN_MERGE).unwrap();
        assert_eq!(dec.eigenvalues.len(), 2);
        assert!((dec.projectors[0].trace() - 2.0).abs() < 1e-9);
        check_decomposition(&m, &dec);
    }

    #[test]
    fn embedding_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let m = random_herm(Ring::Quaternion, 4, &mut rng);
        let back =
            HermitianMatrix::from_embedded_complex(Ring::Quaternion, &m.to_embedded_complex(), 1e-12)
                .unwrap();
        assert!(m.sub(&back).frobenius_norm() < 1e-12);
    }
}
