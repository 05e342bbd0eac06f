//! Dagger-compact structure on effect spaces: units and counits on tensor
//! squares, snake equations, dual morphisms versus adjoints, and the
//! local-tomography dimension count that separates the complex family from
//! the real one.
//!
//! Tensor coordinates are a single canonical flattening
//! `(p, q) ↦ p·dim + q`, so associators and unit isomorphisms are exact
//! index bookkeeping rather than data.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::conjugate::{make_conjugate, ConjugatePair, InstanceEntry, InstanceReport};
use crate::jordan::{make_algebra, FamilySpec, JordanAlgebra, JordanError, JordanModel};
use crate::numkernel::Ring;
use crate::tol;

/// A tensor square of effect spaces with the product inner product. In the
/// orthonormal coordinates used throughout, the Gram matrix of the product
/// basis is exactly the Kronecker product of the factor Grams.
#[derive(Debug, Clone)]
pub struct TensorSpace {
    pub dim_a: usize,
    pub dim_b: usize,
}

impl TensorSpace {
    pub fn new(a: &JordanAlgebra, b: &JordanAlgebra) -> Self {
        TensorSpace {
            dim_a: a.dim(),
            dim_b: b.dim(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn flat(&self, p: usize, q: usize) -> usize {
        p * self.dim_b + q
    }

    pub fn tensor(&self, a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim());
        for p in 0..self.dim_a {
            for q in 0..self.dim_b {
                out[self.flat(p, q)] = a[p] * b[q];
            }
        }
        out
    }

    /// Worst deviation of `⟨a⊗b, x⊗y⟩` from `⟨a,x⟩⟨b,y⟩` over random
    /// probes, plus the exact Gram comparison on the basis.
    pub fn factorization_residual<R: Rng>(&self, samples: usize, rng: &mut R) -> f64 {
        let mut worst: f64 = 0.0;
        // basis Grams are identity matrices; their Kronecker product is
        // again the identity, which is the flat-coordinate Gram
        for p in 0..self.dim_a.min(8) {
            for q in 0..self.dim_b.min(8) {
                let mut ea = DVector::zeros(self.dim_a);
                ea[p] = 1.0;
                let mut eb = DVector::zeros(self.dim_b);
                eb[q] = 1.0;
                let t = self.tensor(&ea, &eb);
                worst = worst.max((t.norm_squared() - 1.0).abs());
            }
        }
        for _ in 0..samples {
            let a = DVector::from_fn(self.dim_a, |_, _| rng.random::<f64>() - 0.5);
            let x = DVector::from_fn(self.dim_a, |_, _| rng.random::<f64>() - 0.5);
            let b = DVector::from_fn(self.dim_b, |_, _| rng.random::<f64>() - 0.5);
            let y = DVector::from_fn(self.dim_b, |_, _| rng.random::<f64>() - 0.5);
            let lhs = self.tensor(&a, &b).dot(&self.tensor(&x, &y));
            let rhs = a.dot(&x) * b.dot(&y);
            worst = worst.max((lhs - rhs).abs());
        }
        worst
    }
}

/// An object of the compact category: an algebra together with its
/// conjugate pair; the unit `e_A ∈ E(Ā)⊗E(A)` and the counit form are
/// derived from the pair.
#[derive(Debug, Clone)]
pub struct CategoryObject {
    pub pair: ConjugatePair,
}

impl CategoryObject {
    pub fn new(algebra: JordanAlgebra) -> Self {
        CategoryObject {
            pair: make_conjugate(JordanModel::new(algebra)),
        }
    }

    pub fn algebra(&self) -> &JordanAlgebra {
        &self.pair.model.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra().dim()
    }

    fn tensor_square(&self) -> TensorSpace {
        TensorSpace {
            dim_a: self.dim(),
            dim_b: self.dim(),
        }
    }

    /// `e_A = Σ_{m∈M} m̄ ⊗ m` over an orthonormal basis `M` of `E(A)`,
    /// supplied as the columns of `basis`.
    pub fn unit_vector_from_basis(&self, basis: &DMatrix<f64>) -> DVector<f64> {
        let ts = self.tensor_square();
        let mut e = DVector::zeros(ts.dim());
        for k in 0..basis.ncols() {
            let m: DVector<f64> = basis.column(k).into();
            e += ts.tensor(&self.pair.bar(&m), &m);
        }
        e
    }

    /// The unit built from the coordinate basis.
    pub fn unit_vector(&self) -> DVector<f64> {
        self.unit_vector_from_basis(&DMatrix::identity(self.dim(), self.dim()))
    }

    /// The counit as a functional vector on `E(A)⊗E(Ā)`: its value on
    /// `a ⊗ b̄` is `⟨a,b⟩` (the inner-product normalization of the
    /// correlator, i.e. n·η).
    pub fn counit_vector(&self) -> DVector<f64> {
        let ts = self.tensor_square();
        let mut c = DVector::zeros(ts.dim());
        for p in 0..self.dim() {
            for q in 0..self.dim() {
                // value on e_p ⊗ e_q with e_q in E(Ā) coordinates
                c[ts.flat(p, q)] = self.pair.eta_val(
                    &DVector::from_fn(self.dim(), |i, _| if i == p { 1.0 } else { 0.0 }),
                    &DVector::from_fn(self.dim(), |i, _| if i == q { 1.0 } else { 0.0 }),
                ) * self.algebra().rank() as f64;
            }
        }
        c
    }
}

/// Residuals of the two duality composites against the identity, in
/// operator norm.
#[derive(Debug, Clone)]
pub struct SnakeResiduals {
    pub left: f64,
    pub right: f64,
}

/// Build both snake composites as explicit matrices and measure their
/// distance to the identity.
pub fn snake_check(obj: &CategoryObject) -> SnakeResiduals {
    snake_check_with(obj, &obj.unit_vector(), &obj.counit_vector())
}

/// Same, but with externally supplied unit/counit vectors (used for the
/// corrupted-unit negative control).
pub fn snake_check_with(
    obj: &CategoryObject,
    unit: &DVector<f64>,
    counit: &DVector<f64>,
) -> SnakeResiduals {
    let d = obj.dim();
    let ts = obj.tensor_square();
    let d3 = d * d * d;
    let flat3 = |i: usize, j: usize, k: usize| (i * d + j) * d + k;

    // left composite on E(A): v ↦ v ⊗ e_A, then counit on the first two
    // factors
    let mut m1 = DMatrix::<f64>::zeros(d3, d);
    for r in 0..d {
        for p in 0..d {
            for q in 0..d {
                m1[(flat3(r, p, q), r)] = unit[ts.flat(p, q)];
            }
        }
    }
    let mut m2 = DMatrix::<f64>::zeros(d, d3);
    for s in 0..d {
        for p in 0..d {
            for r in 0..d {
                m2[(r, flat3(s, p, r))] = counit[ts.flat(s, p)];
            }
        }
    }
    let left_map = &m2 * &m1;

    // right composite on E(Ā): w ↦ e_A ⊗ w, then counit on the last two
    let mut m1p = DMatrix::<f64>::zeros(d3, d);
    for r in 0..d {
        for p in 0..d {
            for q in 0..d {
                m1p[(flat3(p, q, r), r)] = unit[ts.flat(p, q)];
            }
        }
    }
    let mut m2p = DMatrix::<f64>::zeros(d, d3);
    for r in 0..d {
        for q in 0..d {
            for s in 0..d {
                m2p[(r, flat3(r, q, s))] = counit[ts.flat(q, s)];
            }
        }
    }
    let right_map = &m2p * &m1p;

    let eye = DMatrix::<f64>::identity(d, d);
    let op_norm = |m: DMatrix<f64>| m.svd(false, false).singular_values.max();
    SnakeResiduals {
        left: op_norm(left_map - &eye),
        right: op_norm(right_map - &eye),
    }
}

/// The dagger: the adjoint with respect to the canonical inner products,
/// i.e. the transpose in orthonormal coordinates.
pub fn dagger(phi: &DMatrix<f64>) -> DMatrix<f64> {
    phi.transpose()
}

/// The compact-closure dual of `φ : E(A) → E(B)`, a map `E(B̄) → E(Ā)`,
/// computed by explicit tensor contraction of
/// `(id ⊗ counit_B) ∘ (id ⊗ φ ⊗ id) ∘ (e_A ⊗ id)`.
pub fn dual_morphism(
    obj_a: &CategoryObject,
    obj_b: &CategoryObject,
    phi: &DMatrix<f64>,
) -> DMatrix<f64> {
    let da = obj_a.dim();
    let db = obj_b.dim();
    let ea = obj_a.unit_vector();
    let counit_b = obj_b.counit_vector();
    let ts_a = obj_a.tensor_square();
    let ts_b = obj_b.tensor_square();
    let mut out = DMatrix::<f64>::zeros(da, db);
    for w in 0..db {
        // apply to the basis vector e_w of E(B̄)
        let mut col = DVector::<f64>::zeros(da);
        for p in 0..da {
            for q in 0..da {
                let coeff = ea[ts_a.flat(p, q)];
                if coeff == 0.0 {
                    continue;
                }
                // e_A ⊗ e_w contributes coeff · e_p ⊗ (φ e_q) ⊗ e_w;
                // the counit consumes the last two slots
                let phi_q: DVector<f64> = phi.column(q).into();
                let mut pairing = 0.0;
                for b in 0..db {
                    pairing += phi_q[b] * counit_b[ts_b.flat(b, w)];
                }
                col[p] += coeff * pairing;
            }
        }
        out.set_column(w, &col);
    }
    out
}

/// Whether the standard same-family composite of two systems has exactly
/// the product dimension (the local-tomography count).
#[derive(Debug, Clone)]
pub struct LocalTomography {
    pub dim_a: usize,
    pub dim_b: usize,
    pub composite_dim: usize,
    pub locally_tomographic: bool,
}

/// Compare `dim E(A)·dim E(B)` against the standard composite of the same
/// family (`family(n·m)`); supported for the classical, real and complex
/// families, whose standard composites are again in-family.
pub fn local_tomography_check(
    family: FamilySpec,
    n: usize,
    m: usize,
) -> Result<LocalTomography, JordanError> {
    match family {
        FamilySpec::Classical | FamilySpec::RealHerm | FamilySpec::ComplexHerm => {}
        _ => return Err(JordanError::Unsupported),
    }
    let a = make_algebra(family, n)?;
    let b = make_algebra(family, m)?;
    let ab = make_algebra(family, n * m)?;
    Ok(LocalTomography {
        dim_a: a.dim(),
        dim_b: b.dim(),
        composite_dim: ab.dim(),
        locally_tomographic: a.dim() * b.dim() == ab.dim(),
    })
}

/// Reshape an element of `E(Ā)⊗E(A)` into the self-adjoint matrix it
/// represents on the tensor Hilbert space (real and complex matrix
/// families), for cone-membership checks.
pub fn tensor_effect_min_eigenvalue(
    obj: &CategoryObject,
    v: &DVector<f64>,
) -> Option<f64> {
    let (ring, n) = obj.algebra().is_matrix_family()?;
    if ring == Ring::Quaternion {
        return None;
    }
    let d = obj.dim();
    let ts = obj.tensor_square();
    let embed_c = |k: usize| -> DMatrix<Complex64> {
        let mut e = DVector::zeros(d);
        e[k] = 1.0;
        obj.algebra().embed(&e).to_complex()
    };
    let basis_mats: Vec<DMatrix<Complex64>> = (0..d).map(embed_c).collect();
    let nn = n * n;
    let mut out = DMatrix::<Complex64>::zeros(nn, nn);
    for p in 0..d {
        for q in 0..d {
            let c = v[ts.flat(p, q)];
            if c == 0.0 {
                continue;
            }
            out += basis_mats[p].kronecker(&basis_mats[q]) * Complex64::new(c, 0.0);
        }
    }
    let eig = out.symmetric_eigen();
    Some(eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min))
}

/// Instance-level verification of the dagger-compact structure on a list
/// of objects.
pub fn theorem3_instance<R: Rng>(
    objects: &[CategoryObject],
    samples: usize,
    rng: &mut R,
) -> InstanceReport {
    let mut entries = Vec::new();
    for obj in objects {
        let label = obj.algebra().label().to_string();
        let d = obj.dim();

        let snakes = snake_check(obj);
        entries.push(InstanceEntry {
            name: format!("{label}.snake"),
            ok: snakes.left <= 1e-9 && snakes.right <= 1e-9,
            residual: Some(snakes.left.max(snakes.right)),
            skipped: None,
        });

        // unit basis-independence under random orthonormal changes
        let mut basis_res: f64 = 0.0;
        let e = obj.unit_vector();
        for _ in 0..3 {
            let m = DMatrix::<f64>::from_fn(d, d, |_, _| rng.random::<f64>() - 0.5);
            let qr = m.qr();
            let q = qr.q();
            let e2 = obj.unit_vector_from_basis(&q);
            basis_res = basis_res.max((&e2 - &e).norm());
        }
        entries.push(InstanceEntry {
            name: format!("{label}.unit_basis_independence"),
            ok: basis_res <= tol::BASIS_INDEPENDENCE,
            residual: Some(basis_res),
            skipped: None,
        });

        // the counit pairs with the unit through the inner product:
        // ⟨e_A, ā ⊗ b⟩ = ⟨a,b⟩
        let ts = obj.tensor_square();
        let mut pairing_res: f64 = 0.0;
        for _ in 0..samples.min(50) {
            let a = obj.algebra().random_element(rng);
            let b = obj.algebra().random_element(rng);
            let lhs = e.dot(&ts.tensor(&obj.pair.bar(&a), &b));
            pairing_res = pairing_res.max((lhs - a.dot(&b)).abs() / (a.norm() * b.norm()).max(1.0));
        }
        entries.push(InstanceEntry {
            name: format!("{label}.unit_pairing"),
            ok: pairing_res <= 1e-10,
            residual: Some(pairing_res),
            skipped: None,
        });

        // conjugate involution: η_Ā(ā, b) = η_A(a, b̄), with the conjugate
        // object's correlator built the same way
        let mut invol_res: f64 = 0.0;
        for _ in 0..samples.min(50) {
            let a = obj.algebra().random_element(rng);
            let b = obj.algebra().random_element(rng);
            let lhs = {
                // η of the conjugate object evaluated at (ā, b)
                let abar = obj.pair.bar(&a);
                (abar.transpose() * &obj.pair.eta * &b)[(0, 0)]
            };
            let rhs = obj.pair.eta_val(&a, &obj.pair.bar(&b));
            invol_res = invol_res.max((lhs - rhs).abs() / (a.norm() * b.norm()).max(1.0));
        }
        entries.push(InstanceEntry {
            name: format!("{label}.conjugate_involution"),
            ok: invol_res <= 1e-12,
            residual: Some(invol_res),
            skipped: None,
        });

        // dagger-compatibility: the counit transposed and swapped is the
        // unit, and σ is unitary with σ† = σ⁻¹
        let counit = obj.counit_vector();
        let mut swap_res: f64 = 0.0;
        for p in 0..d {
            for q in 0..d {
                swap_res =
                    swap_res.max((counit[ts.flat(p, q)] - e[ts.flat(q, p)]).abs());
            }
        }
        entries.push(InstanceEntry {
            name: format!("{label}.counit_is_swapped_unit_dagger"),
            ok: swap_res <= 1e-12,
            residual: Some(swap_res),
            skipped: None,
        });

        // positivity of the unit in the tensor effect cone; a claim of the
        // locally tomographic (complex) family — the real family's unit
        // reshape is genuinely indefinite
        if obj.algebra().is_matrix_family().map(|(r, _)| r) == Some(Ring::Complex) {
            let min_eig = tensor_effect_min_eigenvalue(obj, &e).unwrap();
            entries.push(InstanceEntry {
                name: format!("{label}.unit_positive"),
                ok: min_eig >= -1e-9,
                residual: Some((-min_eig).max(0.0)),
                skipped: None,
            });
        }

        // morphism duality on endomorphisms of this object
        let mut dual_res: f64 = 0.0;
        let mut functor_res: f64 = 0.0;
        for _ in 0..samples.min(20) {
            let phi = DMatrix::<f64>::from_fn(d, d, |_, _| rng.random::<f64>() - 0.5);
            let psi = DMatrix::<f64>::from_fn(d, d, |_, _| rng.random::<f64>() - 0.5);
            let scale = (phi.norm() * psi.norm()).max(1.0);

            let phi_dual = dual_morphism(obj, obj, &phi);
            // closed form: γ φ† γ
            let closed = &obj.pair.gamma * dagger(&phi) * &obj.pair.gamma;
            dual_res = dual_res.max((&phi_dual - closed).norm() / scale);
            // contravariance and involutivity
            let psi_dual = dual_morphism(obj, obj, &psi);
            let comp_dual = dual_morphism(obj, obj, &(&phi * &psi));
            dual_res = dual_res.max((comp_dual - &psi_dual * &phi_dual).norm() / scale);
            let ddual = dual_morphism(obj, obj, &phi_dual);
            dual_res = dual_res.max((ddual - &phi).norm() / scale);
            // dagger laws
            let composed = dagger(&(&phi * &psi)) - dagger(&psi) * dagger(&phi);
            dual_res = dual_res.max(composed.norm() / scale);
            // functoriality of the bar operation
            let bar = |m: &DMatrix<f64>| &obj.pair.gamma * m * &obj.pair.gamma;
            functor_res =
                functor_res.max((bar(&(&phi * &psi)) - bar(&phi) * bar(&psi)).norm() / scale);
        }
        entries.push(InstanceEntry {
            name: format!("{label}.dual_is_dagger"),
            ok: dual_res <= 1e-9,
            residual: Some(dual_res),
            skipped: None,
        });
        entries.push(InstanceEntry {
            name: format!("{label}.bar_functorial"),
            ok: functor_res <= 1e-12,
            residual: Some(functor_res),
            skipped: None,
        });

        // self-adjoint quadratic representations are fixed by the dagger
        let a = obj.algebra().random_element(rng);
        let ua = obj.algebra().quadratic_rep(&a);
        let fix_res = (dagger(&ua) - &ua).norm() / ua.norm().max(1.0);
        entries.push(InstanceEntry {
            name: format!("{label}.dagger_fixes_quadratic_rep"),
            ok: fix_res <= 1e-10,
            residual: Some(fix_res),
            skipped: None,
        });

        // product inner product factorizes
        let ts_res =
            TensorSpace::new(obj.algebra(), obj.algebra()).factorization_residual(20, rng);
        entries.push(InstanceEntry {
            name: format!("{label}.tensor_inner_product_factorizes"),
            ok: ts_res <= 1e-12,
            residual: Some(ts_res),
            skipped: None,
        });
    }

    InstanceReport {
        label: "dagger-compact structure".to_string(),
        entries,
    }
}
