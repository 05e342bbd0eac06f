//! Property tests for the numeric substrate: eigendecomposition contracts,
//! conic feasibility certificates, and weight-polytope normalization on
//! randomly generated test spaces.

use ejalab::numkernel::{cone_lp_feasible, herm_eig, ConeLp, HermitianMatrix, Quaternion, Ring};
use ejalab::testspace::{weight_polytope, ProbabilityWeight, TestSpace};
use ejalab::tol;
use nalgebra::DVector;
use proptest::prelude::*;

fn quat_strategy() -> impl Strategy<Value = Quaternion> {
    (-10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64)
        .prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
}

fn herm_strategy(ring: Ring, n: usize) -> impl Strategy<Value = HermitianMatrix> {
    let cells = n + n * (n - 1) / 2;
    proptest::collection::vec(quat_strategy(), cells).prop_map(move |vals| {
        let mut m = HermitianMatrix::zeros(ring, n);
        let mut k = 0;
        for i in 0..n {
            m.set(i, i, Quaternion::real(vals[k].w));
            k += 1;
        }
        for i in 0..n {
            for j in 0..i {
                let q = vals[k];
                k += 1;
                let q = match ring {
                    Ring::Real => Quaternion::real(q.w),
                    Ring::Complex => Quaternion::new(q.w, q.x, 0.0, 0.0),
                    Ring::Quaternion => q,
                };
                m.set(i, j, q);
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quaternion_norm_is_multiplicative(p in quat_strategy(), q in quat_strategy()) {
        let lhs = (p * q).norm();
        let rhs = p.norm() * q.norm();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1.0));
    }

    #[test]
    fn quaternion_mul_is_associative(
        p in quat_strategy(),
        q in quat_strategy(),
        r in quat_strategy(),
    ) {
        let lhs = (p * q) * r;
        let rhs = p * (q * r);
        let scale = (p.norm() * q.norm() * r.norm()).max(1.0);
        prop_assert!((lhs - rhs).norm() <= 1e-11 * scale);
    }

    #[test]
    fn herm_eig_contract_real(m in herm_strategy(Ring::Real, 5)) {
        check_eig_contract(&m)?;
    }

    #[test]
    fn herm_eig_contract_complex(m in herm_strategy(Ring::Complex, 5)) {
        check_eig_contract(&m)?;
    }

    #[test]
    fn herm_eig_contract_quaternion(m in herm_strategy(Ring::Quaternion, 4)) {
        check_eig_contract(&m)?;
    }

    /// Nonnegative combinations are feasible with reconstructing
    /// coefficients; negated interior points are infeasible with verified
    /// separating functionals.
    #[test]
    fn cone_lp_certificates(
        raw in proptest::collection::vec(-1.0..1.0f64, 4 * 6),
        coeffs in proptest::collection::vec(0.0..2.0f64, 6),
    ) {
        let gens: Vec<DVector<f64>> = raw
            .chunks(4)
            .map(DVector::from_row_slice)
            .collect();
        prop_assume!(gens.iter().any(|g| g.norm() > 1e-6));
        let mut target = DVector::<f64>::zeros(4);
        for (c, g) in coeffs.iter().zip(&gens) {
            target += g * *c;
        }
        match cone_lp_feasible(&gens, &target, tol::LP).unwrap() {
            ConeLp::Feasible { coefficients } => {
                let mut recon = DVector::<f64>::zeros(4);
                for (c, g) in coefficients.iter().zip(&gens) {
                    recon += g * *c;
                }
                prop_assert!((recon - &target).norm() <= 1e-7 * target.norm().max(1.0));
            }
            ConeLp::Infeasible { .. } => prop_assert!(false, "combination must be feasible"),
        }
    }

    /// Every vertex of the weight polytope of a random two-test space is a
    /// valid probability weight (normalized on every test).
    #[test]
    fn weight_polytope_vertices_are_weights(
        n in 2usize..6,
        split in 1usize..5,
        overlap in 0usize..3,
    ) {
        let n = n.max(2);
        let split = split.min(n - 1);
        let overlap = overlap.min(split);
        let labels: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
        // two overlapping tests carving up the outcome set
        let t1: Vec<String> = labels[..split].to_vec();
        let t2: Vec<String> = labels[split - overlap..].to_vec();
        let space = TestSpace::new(labels, vec![t1, t2]);
        prop_assume!(space.is_ok());
        let space = space.unwrap();
        prop_assume!(space.ensure_valid().is_ok());
        for w in weight_polytope(&space).unwrap() {
            prop_assert!(ProbabilityWeight::new(w.values.clone())
                .validate(&space, tol::NORMALIZATION)
                .is_ok());
        }
    }
}

fn check_eig_contract(m: &HermitianMatrix) -> Result<(), TestCaseError> {
    let dec = herm_eig(m, tol::EIGEN_MERGE).unwrap();
    let n = m.dim();
    let scale = m.frobenius_norm().max(1.0);
    // reconstruction
    let recon = dec.reconstruct(m.ring(), n);
    prop_assert!(recon.sub(m).frobenius_norm() <= 1e-9 * scale);
    // projectors: idempotent, orthogonal, complete
    let mut sum = HermitianMatrix::zeros(m.ring(), n);
    for (i, p) in dec.projectors.iter().enumerate() {
        let pd = p.to_dense();
        let (sq, _) = pd.mul(&pd).to_hermitian(m.ring());
        prop_assert!(sq.sub(p).frobenius_norm() <= 1e-9);
        for q in dec.projectors.iter().skip(i + 1) {
            let prod = pd.mul(&q.to_dense());
            let norm: f64 = (0..n)
                .flat_map(|r| (0..n).map(move |c| (r, c)))
                .map(|(r, c)| prod.get(r, c).norm_sqr())
                .sum::<f64>()
                .sqrt();
            prop_assert!(norm <= 1e-9);
        }
        sum = sum.add(p);
    }
    prop_assert!(
        sum.sub(&HermitianMatrix::identity(m.ring(), n))
            .frobenius_norm()
            <= 1e-9
    );
    // strictly descending eigenvalues
    for w in dec.eigenvalues.windows(2) {
        prop_assert!(w[0] > w[1]);
    }
    Ok(())
}
