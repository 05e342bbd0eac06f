//! Cross-checks of the low-rank coincidences between spin factors and
//! matrix families: explicit isometric isomorphisms
//! spin(2) ≃ realherm(2), spin(3) ≃ complexherm(2), spin(5) ≃ quatherm(2),
//! verified on products, spectra and ball dimensions.

use ejalab::conjugate::bit_ball_check;
use ejalab::jordan::{make_algebra, FamilySpec, JordanAlgebra};
use ejalab::numkernel::{HermitianMatrix, Quaternion, Ring};
use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Columns are the images of the spin coordinate basis under the
/// isomorphism (t, x) ↦ t·I + Σᵢ xᵢσᵢ, expressed in the matrix family's
/// coordinates. The σᵢ square to the identity and pairwise anticommute.
fn iso_matrix(spin: &JordanAlgebra, target: &JordanAlgebra, sigmas: &[HermitianMatrix]) -> DMatrix<f64> {
    let d = spin.dim();
    assert_eq!(d, target.dim());
    let mut m = DMatrix::zeros(d, d);
    // spin basis: e₀ = u/√2, eᵢ = (0, uᵢ)·√2-normalized; images are I/√2
    // and σᵢ/√2 to preserve the inner products
    let unit = target.unit() / 2.0_f64.sqrt();
    m.set_column(0, &unit);
    for (i, sigma) in sigmas.iter().enumerate() {
        let coords = target.extract(sigma) / 2.0_f64.sqrt();
        m.set_column(i + 1, &coords);
    }
    m
}

fn check_iso(spin: &JordanAlgebra, target: &JordanAlgebra, iso: &DMatrix<f64>, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = spin.dim();
    // isometry
    let gram = iso.transpose() * iso;
    assert!((gram - DMatrix::<f64>::identity(d, d)).norm() < 1e-12);
    // unit to unit
    assert!((iso * spin.unit() - target.unit()).norm() < 1e-12);
    // algebra morphism and spectrum preservation on random samples
    for _ in 0..100 {
        let a = spin.random_element(&mut rng);
        let b = spin.random_element(&mut rng);
        let lhs = iso * spin.mul(&a, &b);
        let rhs = target.mul(&(iso * &a), &(iso * &b));
        assert!(
            (lhs - rhs).norm() < 1e-10 * (a.norm() * b.norm()).max(1.0),
            "not a homomorphism: {} → {}",
            spin.label(),
            target.label()
        );
        let ev_spin = spin.eigenvalues(&a).unwrap();
        let ev_target = target.eigenvalues(&(iso * &a)).unwrap();
        assert_eq!(ev_spin.len(), ev_target.len());
        for (s, t) in ev_spin.iter().zip(&ev_target) {
            assert!((s - t).abs() < 1e-9 * a.norm().max(1.0));
        }
    }
}

fn herm(ring: Ring, n: usize, entries: &[(usize, usize, Quaternion)]) -> HermitianMatrix {
    let mut m = HermitianMatrix::zeros(ring, n);
    for (i, j, q) in entries {
        m.set(*i, *j, *q);
    }
    m
}

#[test]
fn spin2_matches_realherm2() {
    let spin = make_algebra(FamilySpec::Spin, 2).unwrap();
    let target = make_algebra(FamilySpec::RealHerm, 2).unwrap();
    let sigmas = vec![
        // diag(1,-1) and the symmetric flip
        herm(Ring::Real, 2, &[(0, 0, Quaternion::real(1.0)), (1, 1, Quaternion::real(-1.0))]),
        herm(Ring::Real, 2, &[(0, 1, Quaternion::real(1.0))]),
    ];
    let iso = iso_matrix(&spin, &target, &sigmas);
    check_iso(&spin, &target, &iso, 301);
}

#[test]
fn spin3_matches_complexherm2() {
    let spin = make_algebra(FamilySpec::Spin, 3).unwrap();
    let target = make_algebra(FamilySpec::ComplexHerm, 2).unwrap();
    let sigmas = vec![
        herm(Ring::Complex, 2, &[(0, 0, Quaternion::real(1.0)), (1, 1, Quaternion::real(-1.0))]),
        herm(Ring::Complex, 2, &[(0, 1, Quaternion::real(1.0))]),
        herm(Ring::Complex, 2, &[(0, 1, Quaternion::new(0.0, 1.0, 0.0, 0.0))]),
    ];
    let iso = iso_matrix(&spin, &target, &sigmas);
    check_iso(&spin, &target, &iso, 302);
}

#[test]
fn spin5_matches_quatherm2() {
    let spin = make_algebra(FamilySpec::Spin, 5).unwrap();
    let target = make_algebra(FamilySpec::QuatHerm, 2).unwrap();
    let sigmas = vec![
        herm(Ring::Quaternion, 2, &[(0, 0, Quaternion::real(1.0)), (1, 1, Quaternion::real(-1.0))]),
        herm(Ring::Quaternion, 2, &[(0, 1, Quaternion::ONE)]),
        herm(Ring::Quaternion, 2, &[(0, 1, Quaternion::I)]),
        herm(Ring::Quaternion, 2, &[(0, 1, Quaternion::J)]),
        herm(Ring::Quaternion, 2, &[(0, 1, Quaternion::K)]),
    ];
    let iso = iso_matrix(&spin, &target, &sigmas);
    check_iso(&spin, &target, &iso, 303);
}

/// Matching ball dimensions across the identified pairs.
#[test]
fn ball_dimensions_agree_across_isomorphic_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(304);
    let pairs = [
        (FamilySpec::Spin, 2, FamilySpec::RealHerm, 2),
        (FamilySpec::Spin, 3, FamilySpec::ComplexHerm, 2),
        (FamilySpec::Spin, 5, FamilySpec::QuatHerm, 2),
    ];
    for (f1, s1, f2, s2) in pairs {
        let a = make_algebra(f1, s1).unwrap();
        let b = make_algebra(f2, s2).unwrap();
        let ra = bit_ball_check(&a, 50, &mut rng).unwrap();
        let rb = bit_ball_check(&b, 50, &mut rng).unwrap();
        assert_eq!(ra.dimension, rb.dimension);
        assert!(ra.max_deviation < 1e-10 && rb.max_deviation < 1e-10);
    }
}

/// Eigenvalue statistics agree across an identified pair: empirical
/// moments of the spectral gap match to sampling accuracy when driven by
/// the transported ensemble.
#[test]
fn eigenvalue_statistics_transport() {
    let spin = make_algebra(FamilySpec::Spin, 3).unwrap();
    let target = make_algebra(FamilySpec::ComplexHerm, 2).unwrap();
    let sigmas = vec![
        herm(Ring::Complex, 2, &[(0, 0, Quaternion::real(1.0)), (1, 1, Quaternion::real(-1.0))]),
        herm(Ring::Complex, 2, &[(0, 1, Quaternion::real(1.0))]),
        herm(Ring::Complex, 2, &[(0, 1, Quaternion::new(0.0, 1.0, 0.0, 0.0))]),
    ];
    let iso = iso_matrix(&spin, &target, &sigmas);
    let mut rng = ChaCha8Rng::seed_from_u64(305);
    let mut gaps_spin = Vec::new();
    let mut gaps_target = Vec::new();
    for _ in 0..500 {
        let a = spin.random_element(&mut rng);
        let ev = spin.eigenvalues(&a).unwrap();
        gaps_spin.push(ev[0] - ev[1]);
        let ev = target.eigenvalues(&(&iso * &a)).unwrap();
        gaps_target.push(ev[0] - ev[1]);
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    assert!((mean(&gaps_spin) - mean(&gaps_target)).abs() < 1e-9);
}

/// The spin basis images really are anticommuting square roots of the
/// identity in each target.
#[test]
fn sigma_systems_are_spin_systems() {
    let cases: Vec<(JordanAlgebra, Vec<HermitianMatrix>)> = vec![
        (
            make_algebra(FamilySpec::RealHerm, 2).unwrap(),
            vec![
                herm(Ring::Real, 2, &[(0, 0, Quaternion::real(1.0)), (1, 1, Quaternion::real(-1.0))]),
                herm(Ring::Real, 2, &[(0, 1, Quaternion::real(1.0))]),
            ],
        ),
        (
            make_algebra(FamilySpec::QuatHerm, 2).unwrap(),
            vec![
                herm(Ring::Quaternion, 2, &[(0, 0, Quaternion::real(1.0)), (1, 1, Quaternion::real(-1.0))]),
                herm(Ring::Quaternion, 2, &[(0, 1, Quaternion::ONE)]),
                herm(Ring::Quaternion, 2, &[(0, 1, Quaternion::I)]),
                herm(Ring::Quaternion, 2, &[(0, 1, Quaternion::J)]),
                herm(Ring::Quaternion, 2, &[(0, 1, Quaternion::K)]),
            ],
        ),
    ];
    for (j, sigmas) in cases {
        let coords: Vec<DVector<f64>> = sigmas.iter().map(|s| j.extract(s)).collect();
        for (i, a) in coords.iter().enumerate() {
            assert!((j.mul(a, a) - j.unit()).norm() < 1e-12, "σ² ≠ u in {}", j.label());
            for b in coords.iter().skip(i + 1) {
                assert!(j.mul(a, b).norm() < 1e-12, "σᵢ∙σⱼ ≠ 0 in {}", j.label());
            }
        }
    }
}
