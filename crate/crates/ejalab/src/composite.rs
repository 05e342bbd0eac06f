//! Joint states on pairs of finite models: non-signaling checks, marginals
//! and conditioning, the linearized conditioning map, perfect-correlation
//! detection, the maximal tensor product at desk scale, and the
//! non-signaling box.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::numkernel::{dual_cone_generators, in_convex_hull};
use crate::ordered::{build_spaces, ModelSpaces, OrderedError, WhichCone};
use crate::testspace::{
    enumerate_vertices, ConstraintSystem, FiniteModel, TestSpace, TestSpaceError,
};
use crate::tol;

#[derive(Debug, Error)]
pub enum CompositeError {
    #[error("joint table is {rows}×{cols}, expected {want_rows}×{want_cols}")]
    TableShape {
        rows: usize,
        cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("joint probability table is signaling: {0}")]
    Signaling(String),
    #[error("composite scale {n} exceeds the bound {max}")]
    ScaleExceeded { n: usize, max: usize },
    #[error("conditioning map is not well-defined on E(A) (residual {residual:.3e})")]
    IllDefined { residual: f64 },
    #[error(transparent)]
    Space(#[from] TestSpaceError),
    #[error(transparent)]
    Ordered(#[from] OrderedError),
}

/// A joint probability table over `X(A) × X(B)`.
#[derive(Debug, Clone)]
pub struct JointState {
    pub a_space: TestSpace,
    pub b_space: TestSpace,
    /// `table[(x, y)] = ω(x, y)`.
    pub table: DMatrix<f64>,
}

/// One violation found while validating a joint table.
#[derive(Debug, Clone)]
pub struct JointViolation {
    pub kind: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct JointDiagnostics {
    pub violations: Vec<JointViolation>,
}

impl JointDiagnostics {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl JointState {
    pub fn new(a_space: TestSpace, b_space: TestSpace, table: DMatrix<f64>) -> Self {
        JointState {
            a_space,
            b_space,
            table,
        }
    }

    /// First marginal, summed over the given far test.
    pub fn marginal1_over(&self, f_test: usize) -> DVector<f64> {
        let f = &self.b_space.tests()[f_test];
        DVector::from_iterator(
            self.table.nrows(),
            (0..self.table.nrows()).map(|x| f.iter().map(|&y| self.table[(x, y)]).sum()),
        )
    }

    pub fn marginal2_over(&self, e_test: usize) -> DVector<f64> {
        let e = &self.a_space.tests()[e_test];
        DVector::from_iterator(
            self.table.ncols(),
            (0..self.table.ncols()).map(|y| e.iter().map(|&x| self.table[(x, y)]).sum()),
        )
    }
}

/// Marginals and conditionals of a non-signaling table, with the
/// zero-marginal convention (`ω_{2|x} = 0` when `ω₁(x) = 0`).
#[derive(Debug, Clone)]
pub struct MarginalsConditionals {
    pub omega1: DVector<f64>,
    pub omega2: DVector<f64>,
    /// `ω_{2|x}` per outcome x of A.
    pub cond_b_given_a: Vec<DVector<f64>>,
    /// `ω_{1|y}` per outcome y of B.
    pub cond_a_given_b: Vec<DVector<f64>>,
}

pub fn marginals_conditionals(
    omega: &JointState,
    tol: f64,
) -> Result<MarginalsConditionals, CompositeError> {
    // non-signaling means the marginal is independent of the far test
    let m1 = omega.marginal1_over(0);
    for f in 1..omega.b_space.tests().len() {
        let other = omega.marginal1_over(f);
        if (&other - &m1).norm() > tol {
            return Err(CompositeError::Signaling(format!(
                "first marginal differs between far tests 0 and {f}"
            )));
        }
    }
    let m2 = omega.marginal2_over(0);
    for e in 1..omega.a_space.tests().len() {
        let other = omega.marginal2_over(e);
        if (&other - &m2).norm() > tol {
            return Err(CompositeError::Signaling(format!(
                "second marginal differs between far tests 0 and {e}"
            )));
        }
    }
    let cond_b_given_a = (0..omega.table.nrows())
        .map(|x| {
            if m1[x] <= tol {
                DVector::zeros(omega.table.ncols())
            } else {
                omega.table.row(x).transpose() / m1[x]
            }
        })
        .collect();
    let cond_a_given_b = (0..omega.table.ncols())
        .map(|y| {
            if m2[y] <= tol {
                DVector::zeros(omega.table.nrows())
            } else {
                omega.table.column(y).clone_owned() / m2[y]
            }
        })
        .collect();
    Ok(MarginalsConditionals {
        omega1: m1,
        omega2: m2,
        cond_b_given_a,
        cond_a_given_b,
    })
}

/// Validate a joint table against two models: product-test normalization,
/// non-signaling, conditional-state membership, and the bipartite law of
/// total probability.
pub fn validate_joint(
    a: &FiniteModel,
    b: &FiniteModel,
    omega: &JointState,
    tol: f64,
) -> JointDiagnostics {
    let mut violations = Vec::new();
    let (na, nb) = (a.space().n_outcomes(), b.space().n_outcomes());
    if omega.table.nrows() != na || omega.table.ncols() != nb {
        violations.push(JointViolation {
            kind: "shape",
            detail: format!(
                "table is {}×{}, expected {na}×{nb}",
                omega.table.nrows(),
                omega.table.ncols()
            ),
        });
        return JointDiagnostics { violations };
    }

    for v in omega.table.iter() {
        if *v < -tol || *v > 1.0 + tol {
            violations.push(JointViolation {
                kind: "range",
                detail: format!("entry {v} outside [0,1]"),
            });
            break;
        }
    }

    for (ei, e) in a.space().tests().iter().enumerate() {
        for (fi, f) in b.space().tests().iter().enumerate() {
            let total: f64 = e
                .iter()
                .flat_map(|&x| f.iter().map(move |&y| (x, y)))
                .map(|(x, y)| omega.table[(x, y)])
                .sum();
            if (total - 1.0).abs() > tol {
                violations.push(JointViolation {
                    kind: "normalization",
                    detail: format!("sums to {total} on test pair ({ei},{fi})"),
                });
            }
        }
    }

    let mc = match marginals_conditionals(omega, tol) {
        Ok(mc) => mc,
        Err(e) => {
            violations.push(JointViolation {
                kind: "non-signaling",
                detail: e.to_string(),
            });
            return JointDiagnostics { violations };
        }
    };

    // conditional states must land in the designated state spaces
    let a_states: Vec<DVector<f64>> = a.vertices().to_vec();
    let b_states: Vec<DVector<f64>> = b.vertices().to_vec();
    for (x, cond) in mc.cond_b_given_a.iter().enumerate() {
        if mc.omega1[x] > tol && !in_convex_hull(cond, &b_states, tol::LP) {
            violations.push(JointViolation {
                kind: "conditional",
                detail: format!("ω₂|x for x={x} is not a state of the second model"),
            });
        }
    }
    for (y, cond) in mc.cond_a_given_b.iter().enumerate() {
        if mc.omega2[y] > tol && !in_convex_hull(cond, &a_states, tol::LP) {
            violations.push(JointViolation {
                kind: "conditional",
                detail: format!("ω₁|y for y={y} is not a state of the first model"),
            });
        }
    }

    // law of total probability: ω₂ = Σ_{x∈E} ω₁(x)·ω₂|x for every E
    for (ei, e) in a.space().tests().iter().enumerate() {
        let mut combo = DVector::zeros(nb);
        for &x in e {
            combo += &mc.cond_b_given_a[x] * mc.omega1[x];
        }
        if (&combo - &mc.omega2).norm() > tol::NORMALIZATION.max(tol) {
            violations.push(JointViolation {
                kind: "total-probability",
                detail: format!("ω₂ ≠ Σ ω₁(x)ω₂|x over test {ei}"),
            });
        }
    }

    JointDiagnostics { violations }
}

/// The conditioning map linearized: the unique linear `E(A) → V(B)` with
/// `x̂ ↦ ω₁(x)·ω₂|x`, returned as a matrix over the two coordinate systems,
/// with positivity verified on the effect-cone generators.
pub fn conditioning_map(
    spaces_a: &ModelSpaces,
    spaces_b: &ModelSpaces,
    omega: &JointState,
) -> Result<DMatrix<f64>, CompositeError> {
    let na = omega.table.nrows();
    // unnormalized conditionals as V(B) coordinate vectors
    let mut images = DMatrix::<f64>::zeros(spaces_b.dim(), na);
    for x in 0..na {
        let raw = omega.table.row(x).transpose();
        images.set_column(x, &spaces_b.coords_of(&raw)?);
    }
    // effect coordinates of the x̂
    let mut eval = DMatrix::<f64>::zeros(spaces_a.dim(), na);
    for (x, e) in spaces_a.evaluation_effects.iter().enumerate() {
        eval.set_column(x, e);
    }
    // solve L · eval = images in the least-squares sense; consistency of
    // the overdetermined system is exactly well-definedness on E(A)
    let svd = eval.transpose().svd(true, true);
    let lt = svd
        .solve(&images.transpose(), 1e-12)
        .map_err(|_| CompositeError::IllDefined {
            residual: f64::INFINITY,
        })?;
    let l = lt.transpose();
    let residual = (&l * &eval - &images).norm();
    if residual > 1e-8 {
        return Err(CompositeError::IllDefined { residual });
    }
    // positivity on the effect cone generators
    for e in &spaces_a.evaluation_effects {
        let img = &l * e;
        let membership = spaces_b.in_cone(WhichCone::VPlus, &img, tol::LP)?;
        if !membership.member {
            return Err(CompositeError::IllDefined {
                residual: f64::NAN,
            });
        }
    }
    Ok(l)
}

/// Perfect correlation of a test pair: subsets `E₀ ⊆ E`, `F₀ ⊆ F` and a
/// bijection `f : E₀ → F₀` with `ω = 0` off the graph of `f`.
#[derive(Debug, Clone)]
pub struct Correlation {
    /// pairs `(x, f(x))`
    pub pairing: Vec<(usize, usize)>,
}

pub fn correlates(
    omega: &JointState,
    e_test: usize,
    f_test: usize,
    tol: f64,
) -> Option<Correlation> {
    let e = &omega.a_space.tests()[e_test];
    let f = &omega.b_space.tests()[f_test];
    let mut pairing = Vec::new();
    let mut used: Vec<usize> = Vec::new();
    for &x in e {
        let support: Vec<usize> = f
            .iter()
            .copied()
            .filter(|&y| omega.table[(x, y)] > tol)
            .collect();
        match support.len() {
            0 => {}
            1 => {
                let y = support[0];
                if used.contains(&y) {
                    return None; // not injective
                }
                used.push(y);
                pairing.push((x, y));
            }
            _ => return None,
        }
    }
    Some(Correlation { pairing })
}

/// A non-signaling composite: the product test space with the polytope of
/// all joint states, and the evaluation pairing π.
#[derive(Debug, Clone)]
pub struct CompositeModel {
    pub a: FiniteModel,
    pub b: FiniteModel,
    pub composite: FiniteModel,
    pub spaces: ModelSpaces,
}

const MAX_COMPOSITE_OUTCOMES: usize = 64;

/// The maximal tensor product: states are exactly the joint states.
pub fn maximal_tensor(a: &FiniteModel, b: &FiniteModel) -> Result<CompositeModel, CompositeError> {
    let (na, nb) = (a.space().n_outcomes(), b.space().n_outcomes());
    let n = na * nb;
    if n > MAX_COMPOSITE_OUTCOMES {
        return Err(CompositeError::ScaleExceeded {
            n,
            max: MAX_COMPOSITE_OUTCOMES,
        });
    }
    let idx = |x: usize, y: usize| x * nb + y;

    let mut eq: Vec<(Vec<f64>, f64)> = Vec::new();
    // product-test normalization
    for e in a.space().tests() {
        for f in b.space().tests() {
            let mut row = vec![0.0; n];
            for &x in e {
                for &y in f {
                    row[idx(x, y)] = 1.0;
                }
            }
            eq.push((row, 1.0));
        }
    }
    // non-signaling: far-test independence of both marginals
    for x in 0..na {
        for f in 1..b.space().tests().len() {
            let mut row = vec![0.0; n];
            for &y in &b.space().tests()[0] {
                row[idx(x, y)] += 1.0;
            }
            for &y in &b.space().tests()[f] {
                row[idx(x, y)] -= 1.0;
            }
            eq.push((row, 0.0));
        }
    }
    for y in 0..nb {
        for e in 1..a.space().tests().len() {
            let mut row = vec![0.0; n];
            for &x in &a.space().tests()[0] {
                row[idx(x, y)] += 1.0;
            }
            for &x in &a.space().tests()[e] {
                row[idx(x, y)] -= 1.0;
            }
            eq.push((row, 0.0));
        }
    }

    let mut ineq: Vec<(Vec<f64>, f64)> = (0..n)
        .map(|i| {
            let mut row = vec![0.0; n];
            row[i] = 1.0;
            (row, 0.0)
        })
        .collect();

    // restricted factors constrain the conditionals: span equalities and
    // facet inequalities of the factor cones, composed with the
    // coordinate conversion
    if !b.is_full() {
        let spaces_b = build_spaces(b)?;
        append_conditional_rows(&mut eq, &mut ineq, &spaces_b, na, nb, true);
    }
    if !a.is_full() {
        let spaces_a = build_spaces(a)?;
        append_conditional_rows(&mut eq, &mut ineq, &spaces_a, na, nb, false);
    }

    let system = ConstraintSystem::<f64> { n, eq, ineq };
    let vertices_raw = enumerate_vertices(&system);

    // assemble the composite model over the product test space
    let outcome_labels: Vec<String> = (0..na)
        .flat_map(|x| {
            let a_lab = a.space().outcomes()[x].clone();
            let b_labels = b.space().outcomes().to_vec();
            b_labels
                .into_iter()
                .map(move |bl| format!("{a_lab}⊗{bl}"))
        })
        .collect();
    let mut tests: Vec<Vec<String>> = Vec::new();
    for e in a.space().tests() {
        for f in b.space().tests() {
            let mut product_test = Vec::with_capacity(e.len() * f.len());
            for &x in e {
                for &y in f {
                    product_test.push(outcome_labels[idx(x, y)].clone());
                }
            }
            tests.push(product_test);
        }
    }
    let product_space = TestSpace::new(outcome_labels, tests)?;
    let vertices: Vec<DVector<f64>> = vertices_raw
        .into_iter()
        .map(DVector::from_vec)
        .collect();
    let composite = FiniteModel::with_states(product_space, vertices)?;
    let spaces = build_spaces(&composite)?;
    Ok(CompositeModel {
        a: a.clone(),
        b: b.clone(),
        composite,
        spaces,
    })
}

fn append_conditional_rows(
    eq: &mut Vec<(Vec<f64>, f64)>,
    ineq: &mut Vec<(Vec<f64>, f64)>,
    factor_spaces: &ModelSpaces,
    na: usize,
    nb: usize,
    conditioning_on_a: bool,
) {
    let n = na * nb;
    let idx = |x: usize, y: usize| x * nb + y;
    let nfar = factor_spaces.basis_matrix.nrows();
    // pseudo-inverse of the factor basis for coordinate conversion
    let pinv = factor_spaces
        .basis_matrix
        .clone()
        .svd(true, true)
        .pseudo_inverse(1e-12)
        .expect("pseudo-inverse of a full-column-rank basis");
    // span membership: rows of (I − B·B⁺) kill vectors outside span(Ω)
    let projector =
        DMatrix::<f64>::identity(nfar, nfar) - &factor_spaces.basis_matrix * &pinv;
    let facets = dual_cone_generators(&factor_spaces.vertex_coords, tol::LP);

    let near = if conditioning_on_a { na } else { nb };
    for z in 0..near {
        for r in 0..nfar {
            let proj_row = projector.row(r);
            if proj_row.norm() < 1e-12 {
                continue;
            }
            let mut row = vec![0.0; n];
            for (w, coeff) in proj_row.iter().enumerate() {
                let k = if conditioning_on_a { idx(z, w) } else { idx(w, z) };
                row[k] = *coeff;
            }
            eq.push((row, 0.0));
        }
        for facet in &facets {
            // facet(coords_of(conditional)) ≥ 0 composes to (facetᵀB⁺)·ω(z,·)
            let ambient = facet.transpose() * &pinv;
            let mut row = vec![0.0; n];
            for (w, coeff) in ambient.iter().enumerate() {
                let k = if conditioning_on_a { idx(z, w) } else { idx(w, z) };
                row[k] = *coeff;
            }
            ineq.push((row, 0.0));
        }
    }
}

impl CompositeModel {
    pub fn outcome_index(&self, x: usize, y: usize) -> usize {
        x * self.b.space().n_outcomes() + y
    }

    /// The pairing `π(x,y)` as an effect on the composite.
    pub fn pi(&self, x: usize, y: usize) -> &DVector<f64> {
        &self.spaces.evaluation_effects[self.outcome_index(x, y)]
    }

    /// Worst deviation of `Σ_{x∈E,y∈F} π(x,y)` from the composite order
    /// unit, over all product test pairs.
    pub fn unit_condition_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for e in self.a.space().tests() {
            for f in self.b.space().tests() {
                let mut total = DVector::zeros(self.spaces.dim());
                for &x in e {
                    for &y in f {
                        total += self.pi(x, y);
                    }
                }
                worst = worst.max((total - self.spaces.unit()).norm());
            }
        }
        worst
    }

    /// Pull a composite state back to a joint table through π (the pairing
    /// is evaluation, so this reads the state entries off).
    pub fn joint_state_of(&self, state_raw: &DVector<f64>) -> JointState {
        let (na, nb) = (self.a.space().n_outcomes(), self.b.space().n_outcomes());
        let table = DMatrix::from_fn(na, nb, |x, y| state_raw[self.outcome_index(x, y)]);
        JointState::new(self.a.space().clone(), self.b.space().clone(), table)
    }
}

/// The non-signaling box on two square bits: every test pair is perfectly
/// and uniformly correlated.
pub fn pr_box() -> JointState {
    let space = TestSpace::from_tests(&[&["x", "y"], &["a", "b"]]);
    let half = 0.5;
    #[rustfmt::skip]
    let table = DMatrix::from_row_slice(4, 4, &[
        // x     y     a     b
        half,  0.0, half,  0.0, // x
        0.0,  half,  0.0, half, // y
        0.0,  half, half,  0.0, // a
        half,  0.0,  0.0, half, // b
    ]);
    JointState::new(space.clone(), space, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjugate::make_conjugate;
    use crate::jordan::{make_algebra, FamilySpec, JordanModel};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn square_model() -> FiniteModel {
        FiniteModel::full(TestSpace::from_tests(&[&["x", "y"], &["a", "b"]])).unwrap()
    }

    fn product_state(a: &DVector<f64>, b: &DVector<f64>) -> DMatrix<f64> {
        a * b.transpose()
    }

    #[test]
    fn pr_box_table_and_marginals() {
        let omega = pr_box();
        let model = square_model();
        let diag = validate_joint(&model, &model, &omega, 1e-12);
        assert!(diag.ok(), "{:?}", diag.violations);
        let mc = marginals_conditionals(&omega, 1e-12).unwrap();
        assert!(mc.omega1.iter().all(|v| (v - 0.5).abs() < 1e-15));
        assert!(mc.omega2.iter().all(|v| (v - 0.5).abs() < 1e-15));
        // exact table entries
        assert_eq!(omega.table[(0, 0)], 0.5);
        assert_eq!(omega.table[(0, 1)], 0.0);
        assert_eq!(omega.table[(2, 1)], 0.5);
        assert_eq!(omega.table[(3, 0)], 0.5);
    }

    #[test]
    fn pr_box_correlates_every_test_pair() {
        let omega = pr_box();
        for e in 0..2 {
            for f in 0..2 {
                let corr = correlates(&omega, e, f, 1e-12).expect("should correlate");
                assert_eq!(corr.pairing.len(), 2);
            }
        }
        // a product of maximally mixed states does not correlate
        let mixed = DVector::from_element(4, 0.5);
        let omega = JointState::new(
            square_model().space().clone(),
            square_model().space().clone(),
            product_state(&mixed, &mixed),
        );
        assert!(correlates(&omega, 0, 0, 1e-12).is_none());
    }

    #[test]
    fn product_states_validate_with_constant_conditionals() {
        let model = square_model();
        let alpha = DVector::from_row_slice(&[1.0, 0.0, 0.25, 0.75]);
        let beta = DVector::from_row_slice(&[0.5, 0.5, 0.9, 0.1]);
        let omega = JointState::new(
            model.space().clone(),
            model.space().clone(),
            product_state(&alpha, &beta),
        );
        let diag = validate_joint(&model, &model, &omega, 1e-12);
        assert!(diag.ok(), "{:?}", diag.violations);
        let mc = marginals_conditionals(&omega, 1e-12).unwrap();
        for x in 0..4 {
            if mc.omega1[x] > 1e-12 {
                assert!((&mc.cond_b_given_a[x] - &beta).norm() < 1e-12);
            }
        }
    }

    /// Perturbing the box so a marginal depends on the far test is flagged,
    /// with direct marginal comparison as the oracle.
    #[test]
    fn signaling_table_is_flagged() {
        let model = square_model();
        let mut omega = pr_box();
        // move mass between rows of the (x-test, a-test) block, keeping
        // the block normalized but skewing the first marginal
        omega.table[(0, 2)] = 0.4;
        omega.table[(0, 3)] = 0.0;
        omega.table[(1, 2)] = 0.1;
        omega.table[(1, 3)] = 0.5;
        // direct oracle: marginal of x over the two far tests differs
        let m_f0 = omega.marginal1_over(0)[0];
        let m_f1 = omega.marginal1_over(1)[0];
        assert!((m_f0 - m_f1).abs() > 0.05);
        let diag = validate_joint(&model, &model, &omega, 1e-9);
        assert!(!diag.ok());
        assert!(diag.violations.iter().any(|v| v.kind == "non-signaling"));
    }

    #[test]
    fn conditioning_map_of_product_state_is_rank_one() {
        let model = square_model();
        let spaces = build_spaces(&model).unwrap();
        let alpha = DVector::from_row_slice(&[0.3, 0.7, 0.6, 0.4]);
        let beta = DVector::from_row_slice(&[1.0, 0.0, 0.5, 0.5]);
        let omega = JointState::new(
            model.space().clone(),
            model.space().clone(),
            product_state(&alpha, &beta),
        );
        let l = conditioning_map(&spaces, &spaces, &omega).unwrap();
        assert_eq!(l.nrows(), 3);
        assert_eq!(l.ncols(), 3);
        assert_eq!(l.rank(1e-9), 1);
        // x̂ ↦ α(x)·β in coordinates
        let beta_coords = spaces.coords_of(&beta).unwrap();
        for x in 0..4 {
            let img = &l * &spaces.evaluation_effects[x];
            assert!((img - &beta_coords * alpha[x]).norm() < 1e-9);
        }
    }

    #[test]
    fn conditioning_map_of_pr_box() {
        let model = square_model();
        let spaces = build_spaces(&model).unwrap();
        let omega = pr_box();
        let l = conditioning_map(&spaces, &spaces, &omega).unwrap();
        // explicit contraction oracle: L x̂ must match the unnormalized
        // conditional read straight from the table
        for x in 0..4 {
            let img = &l * &spaces.evaluation_effects[x];
            let direct = spaces
                .coords_of(&omega.table.row(x).transpose())
                .unwrap();
            assert!((img - direct).norm() < 1e-9);
        }
    }

    /// The correlator of a Jordan conjugate, as a map on effect
    /// coordinates, is an order-isomorphism onto the conjugate state cone.
    #[test]
    fn eta_conditioning_is_order_isomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(197);
        let j = make_algebra(FamilySpec::ComplexHerm, 2).unwrap();
        let pair = make_conjugate(JordanModel::new(j.clone()));
        // η̂(a) = γa/n maps the positive cone onto itself, invertibly
        let eta_hat = pair.eta.clone();
        let inv = eta_hat.clone().try_inverse().unwrap();
        for _ in 0..50 {
            let a = j.random_positive(&mut rng);
            let img = &eta_hat * &a;
            assert!(j.min_eigenvalue(&img).unwrap() >= -1e-10 * a.norm());
            let back = &inv * &img;
            assert!((back - &a).norm() < 1e-9 * a.norm().max(1.0));
        }
    }

    #[test]
    fn maximal_tensor_classical_is_a_simplex() {
        let a = FiniteModel::full(TestSpace::classical(2)).unwrap();
        let b = FiniteModel::full(TestSpace::classical(3)).unwrap();
        let composite = maximal_tensor(&a, &b).unwrap();
        assert_eq!(composite.composite.vertices().len(), 6);
        assert!(composite.unit_condition_residual() < 1e-9);
    }

    #[test]
    fn maximal_tensor_of_square_bits_contains_pr_box() {
        let model = square_model();
        let composite = maximal_tensor(&model, &model).unwrap();
        // the standard no-signaling polytope: 16 deterministic vertices
        // plus 8 box vertices
        assert_eq!(composite.composite.vertices().len(), 24);
        assert!(composite.unit_condition_residual() < 1e-9);

        let pr = pr_box();
        let as_vector =
            DVector::from_fn(16, |k, _| pr.table[(k / 4, k % 4)]);
        let found = composite
            .composite
            .vertices()
            .iter()
            .any(|v| (v - &as_vector).norm() < 1e-9);
        assert!(found, "the box is a vertex of the maximal tensor product");

        // every vertex pulls back to a valid joint state, through π
        for v in composite.composite.vertices() {
            let omega = composite.joint_state_of(v);
            let diag = validate_joint(&model, &model, &omega, 1e-9);
            assert!(diag.ok(), "{:?}", diag.violations);
        }
    }

    #[test]
    fn maximal_tensor_scale_bound() {
        let a = FiniteModel::full(TestSpace::classical(9)).unwrap();
        let b = FiniteModel::full(TestSpace::classical(9)).unwrap();
        assert!(matches!(
            maximal_tensor(&a, &b),
            Err(CompositeError::ScaleExceeded { .. })
        ));
    }

    /// Restricting a factor restricts the composite: diamond ⊗ classical
    /// only admits joint states whose conditionals are diamond states.
    #[test]
    fn restricted_factor_constrains_conditionals() {
        let diamond = crate::testspace::diamond_bit();
        let coin = FiniteModel::full(TestSpace::classical(2)).unwrap();
        let composite = maximal_tensor(&coin, &diamond).unwrap();
        assert!(composite.unit_condition_residual() < 1e-9);
        for v in composite.composite.vertices() {
            let omega = composite.joint_state_of(v);
            let diag = validate_joint(&coin, &diamond, &omega, 1e-9);
            assert!(diag.ok(), "{:?}", diag.violations);
        }
        // extreme joint states are products of a deterministic classical
        // state with a diamond vertex: 2 × 4 of them
        assert_eq!(composite.composite.vertices().len(), 8);
    }

    /// Restriction of the complexherm(2) correlator to a frame pair is a
    /// classical joint table whose conditionals are point masses.
    #[test]
    fn eta_restricted_to_frame_pair_conditions_to_deltas() {
        let mut rng = ChaCha8Rng::seed_from_u64(199);
        let j = make_algebra(FamilySpec::ComplexHerm, 2).unwrap();
        let pair = make_conjugate(JordanModel::new(j.clone()));
        let frame = j.random_frame(&mut rng).unwrap();
        let space = TestSpace::classical(2);
        let table = DMatrix::from_fn(2, 2, |r, c| {
            pair.eta_effects(&frame.elements[r], &frame.elements[c])
        });
        let omega = JointState::new(space.clone(), space, table);
        let mc = marginals_conditionals(&omega, 1e-10).unwrap();
        for x in 0..2 {
            let mut delta = DVector::zeros(2);
            delta[x] = 1.0;
            assert!((&mc.cond_a_given_b[x] - &delta).norm() < 1e-9);
            assert!((mc.omega1[x] - 0.5).abs() < 1e-10);
        }
    }
}
