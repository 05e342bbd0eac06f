//! Euclidean Jordan algebras: the four implemented simple families
//! (real/complex/quaternionic hermitian matrices, spin factors) plus
//! ℝⁿ with componentwise product and finite direct sums.
//!
//! Every algebra is realized over a fixed real coordinate basis that is
//! *orthonormal* for the canonical inner product (`Re Tr(ab)` for matrix
//! families, the spin form scaled so primitive idempotents have norm 1),
//! so `⟨a,b⟩` is the plain dot product of coordinate vectors, the unit has
//! `⟨u,u⟩ = rank`, and adjoints of multiplication operators are transposes.

mod model;
mod spectral;

pub use model::JordanModel;
pub use spectral::{canonical_equal, CanonicalSpectral};

use std::f64::consts::SQRT_2;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::numkernel::{eig_rank1_split, HermitianMatrix, NumError, Quaternion, Ring};
use crate::tol::Tolerances;

#[derive(Debug, Error)]
pub enum JordanError {
    #[error("the exceptional family admits no matrix representation and is unsupported")]
    Unsupported,
    #[error("size {size} out of range for {family} (allowed {min}..={max})")]
    SizeOutOfRange {
        family: &'static str,
        size: usize,
        min: usize,
        max: usize,
    },
    #[error("function undefined at eigenvalue {eigenvalue}")]
    FunctionDomain { eigenvalue: f64 },
    #[error("no frame with distinct spectrum found after {attempts} attempts")]
    FrameSampling { attempts: usize },
    #[error("element is not positive (min eigenvalue {min_eig:.3e})")]
    NotPositive { min_eig: f64 },
    #[error("coefficient {value} outside [0,1]")]
    CoefficientRange { value: f64 },
    #[error("frame size {got} does not match rank {rank}")]
    FrameSize { got: usize, rank: usize },
    #[error("algebra has rank {rank}, expected {expected}")]
    RankMismatch { rank: usize, expected: usize },
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Requested simple family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Classical,
    RealHerm,
    ComplexHerm,
    QuatHerm,
    Spin,
    /// 3×3 octonionic hermitian matrices; requesting it is an explicit
    /// unsupported error.
    Exceptional,
}

impl FamilySpec {
    pub fn parse(s: &str) -> Option<FamilySpec> {
        match s.to_ascii_lowercase().as_str() {
            "classical" => Some(FamilySpec::Classical),
            "realherm" => Some(FamilySpec::RealHerm),
            "complexherm" => Some(FamilySpec::ComplexHerm),
            "quatherm" => Some(FamilySpec::QuatHerm),
            "spin" => Some(FamilySpec::Spin),
            "exceptional" => Some(FamilySpec::Exceptional),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
enum Realization {
    /// ℝⁿ, componentwise product.
    Classical { n: usize },
    /// Self-adjoint n×n matrices over the ring, `a∙b = ½(ab+ba)`.
    Matrix { ring: Ring, n: usize },
    /// ℝ⊕ℝ^d with `(t,x)∙(s,y) = (ts+x·y, ty+sx)`.
    Spin { d: usize },
    /// Block-diagonal direct sum.
    DirectSum {
        parts: Vec<JordanAlgebra>,
        offsets: Vec<usize>,
    },
}

/// A euclidean Jordan algebra realized over orthonormal real coordinates.
#[derive(Debug, Clone)]
pub struct JordanAlgebra {
    realization: Realization,
    rank: usize,
    dim: usize,
    unit: DVector<f64>,
    label: String,
}

/// Construct a simple algebra of the given family and size.
pub fn make_algebra(family: FamilySpec, size: usize) -> Result<JordanAlgebra, JordanError> {
    let range_check = |family: &'static str, min: usize, max: usize| {
        if size < min || size > max {
            Err(JordanError::SizeOutOfRange {
                family,
                size,
                min,
                max,
            })
        } else {
            Ok(())
        }
    };
    match family {
        FamilySpec::Classical => {
            range_check("classical", 1, 64)?;
            Ok(JordanAlgebra {
                realization: Realization::Classical { n: size },
                rank: size,
                dim: size,
                unit: DVector::from_element(size, 1.0),
                label: format!("classical({size})"),
            })
        }
        FamilySpec::RealHerm | FamilySpec::ComplexHerm | FamilySpec::QuatHerm => {
            let (ring, name, max) = match family {
                FamilySpec::RealHerm => (Ring::Real, "realherm", 16),
                FamilySpec::ComplexHerm => (Ring::Complex, "complexherm", 16),
                // quaternionic eigensolves go through a 2n× embedding;
                // keep the family at desk scale
                _ => (Ring::Quaternion, "quatherm", 8),
            };
            range_check(name, 1, max)?;
            let dim = ring.herm_dim(size);
            let mut unit = DVector::zeros(dim);
            for i in 0..size {
                unit[i] = 1.0;
            }
            Ok(JordanAlgebra {
                realization: Realization::Matrix { ring, n: size },
                rank: size,
                dim,
                unit,
                label: format!("{name}({size})"),
            })
        }
        FamilySpec::Spin => {
            range_check("spin", 1, 64)?;
            let mut unit = DVector::zeros(size + 1);
            unit[0] = SQRT_2;
            Ok(JordanAlgebra {
                realization: Realization::Spin { d: size },
                rank: 2,
                dim: size + 1,
                unit,
                label: format!("spin({size})"),
            })
        }
        FamilySpec::Exceptional => Err(JordanError::Unsupported),
    }
}

/// Block-diagonal direct sum of algebras.
pub fn direct_sum(parts: Vec<JordanAlgebra>) -> JordanAlgebra {
    assert!(!parts.is_empty());
    let mut offsets = Vec::with_capacity(parts.len());
    let mut dim = 0;
    let mut rank = 0;
    for p in &parts {
        offsets.push(dim);
        dim += p.dim;
        rank += p.rank;
    }
    let mut unit = DVector::zeros(dim);
    for (p, &off) in parts.iter().zip(&offsets) {
        unit.rows_mut(off, p.dim).copy_from(&p.unit);
    }
    let label = format!(
        "sum({})",
        parts
            .iter()
            .map(|p| p.label.clone())
            .collect::<Vec<_>>()
            .join(",")
    );
    JordanAlgebra {
        realization: Realization::DirectSum { parts, offsets },
        rank,
        dim,
        unit,
        label,
    }
}

/// A maximal set of pairwise orthogonal primitive idempotents.
#[derive(Debug, Clone)]
pub struct JordanFrame {
    pub elements: Vec<DVector<f64>>,
}

impl JordanFrame {
    /// Worst deviation from the frame axioms: idempotence, pairwise
    /// orthogonality, primitivity (unit trace) and summing to the unit.
    pub fn residual(&self, j: &JordanAlgebra) -> f64 {
        let mut worst: f64 = 0.0;
        let mut sum = DVector::zeros(j.dim());
        for (i, p) in self.elements.iter().enumerate() {
            worst = worst.max((j.mul(p, p) - p).norm());
            worst = worst.max((p.dot(j.unit()) - 1.0).abs());
            for q in self.elements.iter().skip(i + 1) {
                worst = worst.max(j.mul(p, q).norm());
            }
            sum += p;
        }
        worst.max((sum - j.unit()).norm())
    }
}

impl JordanAlgebra {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn unit(&self) -> &DVector<f64> {
        &self.unit
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The canonical inner product (plain dot product in these
    /// coordinates).
    pub fn inner(&self, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
        a.dot(b)
    }

    /// The Jordan product in coordinates.
    pub fn mul(&self, a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
        debug_assert_eq!(a.len(), self.dim);
        debug_assert_eq!(b.len(), self.dim);
        match &self.realization {
            Realization::Classical { n } => {
                DVector::from_iterator(*n, a.iter().zip(b.iter()).map(|(x, y)| x * y))
            }
            Realization::Matrix { ring, .. } => {
                let am = self.embed(a).to_dense();
                let bm = self.embed(b).to_dense();
                let sym = am.mul(&bm).add(&bm.mul(&am)).scale(0.5);
                let (h, _) = sym.to_hermitian(*ring);
                self.extract(&h)
            }
            Realization::Spin { d } => {
                let mut out = DVector::zeros(d + 1);
                let spatial: f64 = (1..=*d).map(|i| a[i] * b[i]).sum();
                out[0] = (a[0] * b[0] + spatial) / SQRT_2;
                for i in 1..=*d {
                    out[i] = (a[0] * b[i] + b[0] * a[i]) / SQRT_2;
                }
                out
            }
            Realization::DirectSum { parts, offsets } => {
                let mut out = DVector::zeros(self.dim);
                for (p, &off) in parts.iter().zip(offsets) {
                    let pa = a.rows(off, p.dim).into_owned();
                    let pb = b.rows(off, p.dim).into_owned();
                    out.rows_mut(off, p.dim).copy_from(&p.mul(&pa, &pb));
                }
                out
            }
        }
    }

    pub fn square(&self, a: &DVector<f64>) -> DVector<f64> {
        self.mul(a, a)
    }

    /// Matrix of the multiplication operator `L(a): b ↦ a∙b`.
    pub fn l_matrix(&self, a: &DVector<f64>) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for jcol in 0..self.dim {
            let mut e = DVector::zeros(self.dim);
            e[jcol] = 1.0;
            m.set_column(jcol, &self.mul(a, &e));
        }
        m
    }

    /// Quadratic representation `U_a = 2L(a)² − L(a²)`, the Jordan analogue
    /// of `b ↦ aba`. Satisfies `U_a(u) = a²` and is symmetric in these
    /// coordinates.
    pub fn quadratic_rep(&self, a: &DVector<f64>) -> DMatrix<f64> {
        let l = self.l_matrix(a);
        let l_sq = self.l_matrix(&self.square(a));
        &l * &l * 2.0 - l_sq
    }

    /// Coordinates → self-adjoint matrix (matrix realizations only).
    pub fn embed(&self, a: &DVector<f64>) -> HermitianMatrix {
        let Realization::Matrix { ring, n } = &self.realization else {
            panic!("embed() requires a matrix realization");
        };
        let mut m = HermitianMatrix::zeros(*ring, *n);
        for i in 0..*n {
            m.set(i, i, Quaternion::real(a[i]));
        }
        let units = ring_units(*ring);
        let mut k = *n;
        for i in 0..*n {
            for jj in i + 1..*n {
                let mut q = Quaternion::ZERO;
                for u in units {
                    q += u.scale(a[k] / SQRT_2);
                    k += 1;
                }
                // entry (i,j) with i < j; set() mirrors the conjugate
                m.set(i, jj, q);
            }
        }
        m
    }

    /// Self-adjoint matrix → coordinates (inverse of [`Self::embed`]).
    pub fn extract(&self, m: &HermitianMatrix) -> DVector<f64> {
        let Realization::Matrix { ring, n } = &self.realization else {
            panic!("extract() requires a matrix realization");
        };
        let mut a = DVector::zeros(self.dim);
        for i in 0..*n {
            a[i] = m.get(i, i).w;
        }
        let mut k = *n;
        for i in 0..*n {
            for jj in i + 1..*n {
                let q = m.get(i, jj);
                let comps = [q.w, q.x, q.y, q.z];
                for (u, c) in ring_units(*ring).iter().zip(comps) {
                    debug_assert!(u.norm() > 0.0);
                    a[k] = c * SQRT_2;
                    k += 1;
                }
            }
        }
        a
    }

    /// Full eigenframe of an element: `rank` pairs (eigenvalue, primitive
    /// idempotent), eigenvalues descending, `a = Σ λᵢ xᵢ`.
    pub fn eigenframe(&self, a: &DVector<f64>) -> Result<Vec<(f64, DVector<f64>)>, JordanError> {
        match &self.realization {
            Realization::Classical { n } => {
                let mut out: Vec<(f64, DVector<f64>)> = (0..*n)
                    .map(|i| {
                        let mut e = DVector::zeros(*n);
                        e[i] = 1.0;
                        (a[i], e)
                    })
                    .collect();
                out.sort_by(|x, y| y.0.total_cmp(&x.0));
                Ok(out)
            }
            Realization::Matrix { .. } => {
                let split = eig_rank1_split(&self.embed(a))?;
                Ok(split
                    .into_iter()
                    .map(|(t, p)| (t, self.extract(&p)))
                    .collect())
            }
            Realization::Spin { d } => {
                let spatial = a.rows(1, *d).into_owned();
                let r = spatial.norm();
                let dir = if r == 0.0 {
                    let mut e = DVector::zeros(*d);
                    e[0] = 1.0;
                    e
                } else {
                    &spatial / r
                };
                let plus = {
                    let mut p = DVector::zeros(*d + 1);
                    p[0] = 1.0 / SQRT_2;
                    p.rows_mut(1, *d).copy_from(&(&dir / SQRT_2));
                    p
                };
                let minus = {
                    let mut p = DVector::zeros(*d + 1);
                    p[0] = 1.0 / SQRT_2;
                    p.rows_mut(1, *d).copy_from(&(-&dir / SQRT_2));
                    p
                };
                Ok(vec![
                    ((a[0] + r) / SQRT_2, plus),
                    ((a[0] - r) / SQRT_2, minus),
                ])
            }
            Realization::DirectSum { parts, offsets } => {
                let mut out: Vec<(f64, DVector<f64>)> = Vec::with_capacity(self.rank);
                for (p, &off) in parts.iter().zip(offsets) {
                    let pa = a.rows(off, p.dim).into_owned();
                    for (t, x) in p.eigenframe(&pa)? {
                        let mut lifted = DVector::zeros(self.dim);
                        lifted.rows_mut(off, p.dim).copy_from(&x);
                        out.push((t, lifted));
                    }
                }
                out.sort_by(|x, y| y.0.total_cmp(&x.0));
                Ok(out)
            }
        }
    }

    /// All `rank` eigenvalues (descending, zeros included).
    pub fn eigenvalues(&self, a: &DVector<f64>) -> Result<Vec<f64>, JordanError> {
        Ok(self.eigenframe(a)?.into_iter().map(|(t, _)| t).collect())
    }

    pub fn min_eigenvalue(&self, a: &DVector<f64>) -> Result<f64, JordanError> {
        Ok(self
            .eigenvalues(a)?
            .last()
            .copied()
            .expect("rank ≥ 1"))
    }

    /// Canonical spectral decomposition: distinct nonzero eigenvalues in
    /// strictly descending order with jointly orthogonal sharp effects.
    pub fn spectral_decompose(
        &self,
        a: &DVector<f64>,
        tols: &Tolerances,
    ) -> Result<CanonicalSpectral, JordanError> {
        spectral::decompose(self, a, tols)
    }

    /// `f(a) = Σ f(tᵢ)pᵢ` over the canonical decomposition, with the kernel
    /// projector re-inserted so `f(0)` contributes when nonzero.
    pub fn functional_calculus(
        &self,
        a: &DVector<f64>,
        f: impl Fn(f64) -> f64,
        tols: &Tolerances,
    ) -> Result<DVector<f64>, JordanError> {
        spectral::functional_calculus(self, a, f, tols)
    }

    /// `p² = p` with unit trace.
    pub fn is_primitive_idempotent(&self, p: &DVector<f64>, tol: f64) -> bool {
        (self.mul(p, p) - p).norm() <= tol && (p.dot(&self.unit) - 1.0).abs() <= tol
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> DVector<f64> {
        DVector::from_fn(self.dim, |_, _| rng.sample::<f64, _>(StandardNormal))
    }

    /// A random positive element (a square).
    pub fn random_positive<R: Rng>(&self, rng: &mut R) -> DVector<f64> {
        let x = self.random_element(rng);
        self.square(&x)
    }

    /// A random element strictly inside the positive cone.
    pub fn random_interior<R: Rng>(&self, rng: &mut R) -> DVector<f64> {
        let sq = self.random_positive(rng);
        let ridge = 0.05 * sq.dot(&self.unit).abs() / self.rank as f64 + 0.05;
        sq + &self.unit * ridge
    }

    /// A frame sampled by decomposing a random element; retries (up to 100
    /// times) when the sampled spectrum fails to separate cleanly.
    pub fn random_frame<R: Rng>(&self, rng: &mut R) -> Result<JordanFrame, JordanError> {
        const ATTEMPTS: usize = 100;
        for _ in 0..ATTEMPTS {
            let a = self.random_element(rng);
            let Ok(frame) = self.eigenframe(&a) else {
                continue;
            };
            let candidate = JordanFrame {
                elements: frame.into_iter().map(|(_, x)| x).collect(),
            };
            if candidate.elements.len() == self.rank && candidate.residual(self) < 1e-7 {
                return Ok(candidate);
            }
        }
        Err(JordanError::FrameSampling { attempts: ATTEMPTS })
    }

    /// Spin-factor helpers: native `(t, x)` form from coordinates.
    pub fn spin_native(&self, a: &DVector<f64>) -> Option<(f64, DVector<f64>)> {
        match &self.realization {
            Realization::Spin { d } => {
                Some((a[0] / SQRT_2, a.rows(1, *d).into_owned() / SQRT_2))
            }
            _ => None,
        }
    }

    pub fn spin_coords(&self, t: f64, x: &DVector<f64>) -> Option<DVector<f64>> {
        match &self.realization {
            Realization::Spin { d } if x.len() == *d => {
                let mut a = DVector::zeros(*d + 1);
                a[0] = SQRT_2 * t;
                a.rows_mut(1, *d).copy_from(&(x * SQRT_2));
                Some(a)
            }
            _ => None,
        }
    }

    pub fn is_matrix_family(&self) -> Option<(Ring, usize)> {
        match &self.realization {
            Realization::Matrix { ring, n } => Some((*ring, *n)),
            _ => None,
        }
    }

    pub fn is_spin(&self) -> Option<usize> {
        match &self.realization {
            Realization::Spin { d } => Some(*d),
            _ => None,
        }
    }

    pub fn is_classical(&self) -> Option<usize> {
        match &self.realization {
            Realization::Classical { n } => Some(*n),
            _ => None,
        }
    }

    pub fn direct_sum_parts(&self) -> Option<(&[JordanAlgebra], &[usize])> {
        match &self.realization {
            Realization::DirectSum { parts, offsets } => Some((parts, offsets)),
            _ => None,
        }
    }
}

fn ring_units(ring: Ring) -> &'static [Quaternion] {
    match ring {
        Ring::Real => &[Quaternion::ONE],
        Ring::Complex => &[Quaternion::ONE, Quaternion::I],
        Ring::Quaternion => &[
            Quaternion::ONE,
            Quaternion::I,
            Quaternion::J,
            Quaternion::K,
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn all_small_algebras() -> Vec<JordanAlgebra> {
        let mut out = vec![
            make_algebra(FamilySpec::Classical, 1).unwrap(),
            make_algebra(FamilySpec::Classical, 4).unwrap(),
            make_algebra(FamilySpec::RealHerm, 3).unwrap(),
            make_algebra(FamilySpec::ComplexHerm, 2).unwrap(),
            make_algebra(FamilySpec::ComplexHerm, 3).unwrap(),
            make_algebra(FamilySpec::QuatHerm, 2).unwrap(),
            make_algebra(FamilySpec::Spin, 4).unwrap(),
        ];
        out.push(direct_sum(vec![
            make_algebra(FamilySpec::Classical, 2).unwrap(),
            make_algebra(FamilySpec::ComplexHerm, 2).unwrap(),
        ]));
        out
    }

    #[test]
    fn construction_basics() {
        let j = make_algebra(FamilySpec::ComplexHerm, 2).unwrap();
        assert_eq!(j.dim(), 4);
        assert_eq!(j.rank(), 2);
        // unit is the identity matrix
        let m = j.embed(j.unit());
        assert_eq!(m.get(0, 0).w, 1.0);
        assert_eq!(m.get(1, 1).w, 1.0);
        assert_eq!(m.get(0, 1), Quaternion::ZERO);

        assert!(matches!(
            make_algebra(FamilySpec::Exceptional, 3),
            Err(JordanError::Unsupported)
        ));
    }

    #[test]
    fn spin3_dimension_matches_complexherm2() {
        let s = make_algebra(FamilySpec::Spin, 3).unwrap();
        let c = make_algebra(FamilySpec::ComplexHerm, 2).unwrap();
        assert_eq!(s.dim(), c.dim());
        assert_eq!(s.rank(), c.rank());
    }

    #[test]
    fn coordinates_are_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for j in all_small_algebras() {
            // inner product of coordinates equals the canonical form:
            // for matrix families compare with Re Tr(ab)
            if j.is_matrix_family().is_some() {
                for _ in 0..20 {
                    let a = j.random_element(&mut rng);
                    let b = j.random_element(&mut rng);
                    let tr = j.embed(&a).inner(&j.embed(&b));
                    assert!((tr - a.dot(&b)).abs() < 1e-10);
                }
            }
            // unit norm² = rank
            assert!((j.unit().norm_squared() - j.rank() as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn embed_extract_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for j in [
            make_algebra(FamilySpec::RealHerm, 4).unwrap(),
            make_algebra(FamilySpec::ComplexHerm, 3).unwrap(),
            make_algebra(FamilySpec::QuatHerm, 3).unwrap(),
        ] {
            let a = j.random_element(&mut rng);
            let back = j.extract(&j.embed(&a));
            assert!((&a - &back).norm() < 1e-12);
        }
    }

    #[test]
    fn unit_law_all_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for j in all_small_algebras() {
            for _ in 0..20 {
                let a = j.random_element(&mut rng);
                assert!((j.mul(&a, j.unit()) - &a).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn spin_unit_acts_as_identity_natively() {
        let j = make_algebra(FamilySpec::Spin, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let a = j.random_element(&mut rng);
        let u = j.spin_coords(1.0, &DVector::zeros(5)).unwrap();
        assert!((u - j.unit()).norm() < 1e-15);
        assert!((j.mul(j.unit(), &a) - &a).norm() < 1e-12);
    }

    #[test]
    fn quadratic_rep_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for j in all_small_algebras() {
            let a = j.random_element(&mut rng);
            let ua = j.quadratic_rep(&a);
            // U_a u = a²
            assert!((&ua * j.unit() - j.square(&a)).norm() < 1e-9 * (1.0 + a.norm_squared()));
            // U_u = id
            let uu = j.quadratic_rep(j.unit());
            assert!((&uu - DMatrix::<f64>::identity(j.dim(), j.dim())).norm() < 1e-9);
            // symmetric in orthonormal coordinates
            assert!((&ua - &ua.transpose()).norm() < 1e-9 * (1.0 + a.norm_squared()));
        }
    }

    /// For matrix families U_a(b) must equal the matrix product aba.
    #[test]
    fn quadratic_rep_matches_matrix_sandwich() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for j in [
            make_algebra(FamilySpec::RealHerm, 3).unwrap(),
            make_algebra(FamilySpec::ComplexHerm, 3).unwrap(),
            make_algebra(FamilySpec::QuatHerm, 2).unwrap(),
        ] {
            for _ in 0..10 {
                let a = j.random_element(&mut rng);
                let b = j.random_element(&mut rng);
                let lhs = j.quadratic_rep(&a) * &b;
                let (am, bm) = (j.embed(&a).to_dense(), j.embed(&b).to_dense());
                let aba = am.mul(&bm).mul(&am);
                let (h, dist) = aba.to_hermitian(j.is_matrix_family().unwrap().0);
                assert!(dist < 1e-10 * (1.0 + a.norm_squared() * b.norm()));
                let rhs = j.extract(&h);
                assert!(
                    (lhs - rhs).norm() < 1e-9 * (1.0 + a.norm_squared() * b.norm()),
                    "sandwich mismatch for {}",
                    j.label()
                );
            }
        }
    }

    #[test]
    fn eigenframe_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for j in all_small_algebras() {
            for _ in 0..10 {
                let a = j.random_element(&mut rng);
                let frame = j.eigenframe(&a).unwrap();
                assert_eq!(frame.len(), j.rank());
                let mut recon = DVector::zeros(j.dim());
                for (t, x) in &frame {
                    recon += x * *t;
                }
                assert!(
                    (recon - &a).norm() < 1e-9 * a.norm().max(1.0),
                    "eigenframe reconstruction failed for {}",
                    j.label()
                );
            }
        }
    }

    #[test]
    fn random_frames_are_frames() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for j in all_small_algebras() {
            let frame = j.random_frame(&mut rng).unwrap();
            assert_eq!(frame.elements.len(), j.rank());
            assert!(frame.residual(&j) < 1e-8);
            for p in &frame.elements {
                assert!(j.is_primitive_idempotent(p, 1e-8));
            }
        }
    }

    #[test]
    fn classical_frame_is_standard_basis() {
        let j = make_algebra(FamilySpec::Classical, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        let frame = j.random_frame(&mut rng).unwrap();
        for p in &frame.elements {
            // each frame element is a standard basis vector
            let ones = p.iter().filter(|v| (**v - 1.0).abs() < 1e-12).count();
            let zeros = p.iter().filter(|v| v.abs() < 1e-12).count();
            assert_eq!(ones, 1);
            assert_eq!(zeros, 3);
        }
    }

    #[test]
    fn unit_is_not_primitive_above_rank_one() {
        let j = make_algebra(FamilySpec::ComplexHerm, 2).unwrap();
        assert!(!j.is_primitive_idempotent(j.unit(), 1e-9));
        let j1 = make_algebra(FamilySpec::Classical, 1).unwrap();
        assert!(j1.is_primitive_idempotent(j1.unit(), 1e-12));
    }
}
