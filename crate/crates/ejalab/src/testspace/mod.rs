//! Finite test spaces, probability weights, probabilistic models with
//! polytope state spaces, finite symmetry groups, and the symmetrized
//! sharpening construction.

mod polytope;

use std::collections::BTreeSet;

use nalgebra::DVector;
use num_rational::BigRational;
use thiserror::Error;

use crate::numkernel::{cone_lp_feasible, in_convex_hull, ConeLp};
use crate::tol;

pub use polytope::{enumerate_vertices, ConstraintSystem, PolyScalar};

#[derive(Debug, Error)]
pub enum TestSpaceError {
    #[error("unknown outcome label `{0}` in a test")]
    UnknownOutcome(String),
    #[error("duplicate outcome label `{0}`")]
    DuplicateOutcome(String),
    #[error("outcome `{label}` listed twice in test {test}")]
    DuplicateWithinTest { test: usize, label: String },
    #[error("structurally invalid test space: {0}")]
    Invalid(String),
    #[error("test space is not uniform")]
    NotUniform,
    #[error("outcome count {n} exceeds the vertex-enumeration scale bound {max}")]
    ScaleExceeded { n: usize, max: usize },
    #[error("invalid probability weight: {0}")]
    InvalidWeight(String),
    #[error("model is not unital")]
    NotUnital,
    #[error("group action is not transitive on the outcome set")]
    NotTransitive,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("generated group exceeds {cap} elements")]
    GroupTooLarge { cap: usize },
}

/// A finite collection of tests (outcome sets) over a shared outcome space.
#[derive(Debug, Clone, PartialEq)]
pub struct TestSpace {
    outcomes: Vec<String>,
    tests: Vec<Vec<usize>>,
}

/// What [`TestSpace::validate`] reports.
#[derive(Debug, Clone)]
pub struct SpaceDiagnostics {
    pub n_outcomes: usize,
    pub n_tests: usize,
    pub empty_tests: Vec<usize>,
    pub orphan_outcomes: Vec<String>,
    pub uniform: bool,
    /// Common test size when uniform.
    pub rank: Option<usize>,
}

impl SpaceDiagnostics {
    pub fn is_valid(&self) -> bool {
        self.n_tests > 0 && self.empty_tests.is_empty() && self.orphan_outcomes.is_empty()
    }

    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.n_tests == 0 {
            v.push("no tests".to_string());
        }
        for t in &self.empty_tests {
            v.push(format!("empty test at index {t}"));
        }
        for o in &self.orphan_outcomes {
            v.push(format!("outcome `{o}` belongs to no test"));
        }
        v
    }
}

impl TestSpace {
    /// Build a test space over explicitly named outcomes. Tests may overlap;
    /// structural problems (empty tests, orphans) are representable and
    /// reported by [`TestSpace::validate`].
    pub fn new(
        outcomes: Vec<String>,
        tests: Vec<Vec<String>>,
    ) -> Result<TestSpace, TestSpaceError> {
        let mut seen = BTreeSet::new();
        for o in &outcomes {
            if !seen.insert(o.clone()) {
                return Err(TestSpaceError::DuplicateOutcome(o.clone()));
            }
        }
        let index = |label: &String| {
            outcomes
                .iter()
                .position(|o| o == label)
                .ok_or_else(|| TestSpaceError::UnknownOutcome(label.clone()))
        };
        let mut t_idx = Vec::with_capacity(tests.len());
        for (ti, test) in tests.iter().enumerate() {
            let mut ids = Vec::with_capacity(test.len());
            for label in test {
                let id = index(label)?;
                if ids.contains(&id) {
                    return Err(TestSpaceError::DuplicateWithinTest {
                        test: ti,
                        label: label.clone(),
                    });
                }
                ids.push(id);
            }
            t_idx.push(ids);
        }
        Ok(TestSpace {
            outcomes,
            tests: t_idx,
        })
    }

    /// Outcome set inferred as the union of the tests, in first-appearance
    /// order.
    pub fn from_tests(tests: &[&[&str]]) -> TestSpace {
        let mut outcomes: Vec<String> = Vec::new();
        for test in tests {
            for o in *test {
                if !outcomes.iter().any(|x| x == o) {
                    outcomes.push((*o).to_string());
                }
            }
        }
        let tests = tests
            .iter()
            .map(|t| t.iter().map(|s| s.to_string()).collect())
            .collect();
        TestSpace::new(outcomes, tests).expect("labels are consistent by construction")
    }

    /// The two-test, two-outcome space `{{x,x'},{y,y'}}`.
    pub fn square_bit() -> TestSpace {
        TestSpace::from_tests(&[&["x", "x'"], &["y", "y'"]])
    }

    /// A single test with `n` outcomes `e0..e{n-1}`.
    pub fn classical(n: usize) -> TestSpace {
        let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        TestSpace::from_tests(&[&refs])
    }

    pub fn n_outcomes(&self) -> usize {
        self.outcomes.len()
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn outcome_index(&self, label: &str) -> Option<usize> {
        self.outcomes.iter().position(|o| o == label)
    }

    pub fn tests(&self) -> &[Vec<usize>] {
        &self.tests
    }

    pub fn validate(&self) -> SpaceDiagnostics {
        let empty_tests: Vec<usize> = self
            .tests
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_empty())
            .map(|(i, _)| i)
            .collect();
        let mut covered = vec![false; self.outcomes.len()];
        for t in &self.tests {
            for &x in t {
                covered[x] = true;
            }
        }
        let orphan_outcomes = covered
            .iter()
            .enumerate()
            .filter(|(_, c)| !**c)
            .map(|(i, _)| self.outcomes[i].clone())
            .collect();
        let sizes: BTreeSet<usize> = self.tests.iter().map(|t| t.len()).collect();
        let uniform = sizes.len() == 1 && !sizes.contains(&0);
        SpaceDiagnostics {
            n_outcomes: self.outcomes.len(),
            n_tests: self.tests.len(),
            empty_tests,
            orphan_outcomes,
            uniform,
            rank: if uniform {
                sizes.into_iter().next()
            } else {
                None
            },
        }
    }

    pub fn ensure_valid(&self) -> Result<(), TestSpaceError> {
        let d = self.validate();
        if d.is_valid() {
            Ok(())
        } else {
            Err(TestSpaceError::Invalid(d.violations().join("; ")))
        }
    }

    /// Common test size, when all tests have one.
    pub fn uniform_rank(&self) -> Option<usize> {
        self.validate().rank
    }
}

/// A probability weight: outcome probabilities summing to 1 on every test.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityWeight {
    pub values: DVector<f64>,
}

impl ProbabilityWeight {
    pub fn new(values: DVector<f64>) -> Self {
        ProbabilityWeight { values }
    }

    pub fn validate(&self, space: &TestSpace, tol: f64) -> Result<(), TestSpaceError> {
        if self.values.len() != space.n_outcomes() {
            return Err(TestSpaceError::InvalidWeight(format!(
                "length {} vs {} outcomes",
                self.values.len(),
                space.n_outcomes()
            )));
        }
        for (i, v) in self.values.iter().enumerate() {
            if !(-tol..=1.0 + tol).contains(v) {
                return Err(TestSpaceError::InvalidWeight(format!(
                    "value {v} at outcome `{}` outside [0,1]",
                    space.outcomes()[i]
                )));
            }
        }
        for (ti, test) in space.tests().iter().enumerate() {
            let s: f64 = test.iter().map(|&x| self.values[x]).sum();
            if (s - 1.0).abs() > tol {
                return Err(TestSpaceError::InvalidWeight(format!(
                    "sums to {s} on test {ti}"
                )));
            }
        }
        Ok(())
    }
}

/// The maximally mixed weight `x ↦ 1/n` of a uniform space.
pub fn maximally_mixed(space: &TestSpace) -> Result<ProbabilityWeight, TestSpaceError> {
    let n = space.uniform_rank().ok_or(TestSpaceError::NotUniform)?;
    Ok(ProbabilityWeight::new(DVector::from_element(
        space.n_outcomes(),
        1.0 / n as f64,
    )))
}

/// Arithmetic mode for the polytope layer. Rational mode keeps vertex
/// coordinates and barycenters exact (inputs are converted from their
/// binary-float values exactly), which removes tie-breaking noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PolytopeMode {
    #[default]
    Float,
    ExactRational,
}

const MAX_OUTCOMES_FOR_ENUMERATION: usize = 20;

fn weight_system<S: PolyScalar>(space: &TestSpace) -> ConstraintSystem<S> {
    let n = space.n_outcomes();
    let eq = space
        .tests()
        .iter()
        .map(|test| {
            let mut row = vec![S::zero(); n];
            for &x in test {
                row[x] = S::one();
            }
            (row, S::one())
        })
        .collect();
    let ineq = (0..n)
        .map(|i| {
            let mut row = vec![S::zero(); n];
            row[i] = S::one();
            (row, S::zero())
        })
        .collect();
    ConstraintSystem { n, eq, ineq }
}

/// Vertices of the polytope of all probability weights on `space`. An empty
/// list is legal: some test spaces admit no weights at all.
pub fn weight_polytope(space: &TestSpace) -> Result<Vec<ProbabilityWeight>, TestSpaceError> {
    weight_polytope_with(space, PolytopeMode::Float)
}

pub fn weight_polytope_with(
    space: &TestSpace,
    mode: PolytopeMode,
) -> Result<Vec<ProbabilityWeight>, TestSpaceError> {
    space.ensure_valid()?;
    let n = space.n_outcomes();
    if n > MAX_OUTCOMES_FOR_ENUMERATION {
        return Err(TestSpaceError::ScaleExceeded {
            n,
            max: MAX_OUTCOMES_FOR_ENUMERATION,
        });
    }
    let raw: Vec<Vec<f64>> = match mode {
        PolytopeMode::Float => enumerate_vertices(&weight_system::<f64>(space)),
        PolytopeMode::ExactRational => enumerate_vertices(&weight_system::<BigRational>(space))
            .into_iter()
            .map(|v| v.iter().map(PolyScalar::to_f64).collect())
            .collect(),
    };
    Ok(raw
        .into_iter()
        .map(|v| ProbabilityWeight::new(DVector::from_vec(v)))
        .collect())
}

/// A probabilistic model: a test space plus a designated closed convex set
/// of weights, stored by its vertices.
#[derive(Debug, Clone)]
pub struct FiniteModel {
    space: TestSpace,
    vertices: Vec<DVector<f64>>,
    full: bool,
}

impl FiniteModel {
    /// Model with the full state space (all probability weights).
    pub fn full(space: TestSpace) -> Result<FiniteModel, TestSpaceError> {
        Self::full_with(space, PolytopeMode::default())
    }

    pub fn full_with(space: TestSpace, mode: PolytopeMode) -> Result<FiniteModel, TestSpaceError> {
        let vertices = weight_polytope_with(&space, mode)?
            .into_iter()
            .map(|w| w.values)
            .collect();
        Ok(FiniteModel {
            space,
            vertices,
            full: true,
        })
    }

    /// Model with a designated state space given by vertices; each vertex
    /// must be a valid probability weight.
    pub fn with_states(
        space: TestSpace,
        states: Vec<DVector<f64>>,
    ) -> Result<FiniteModel, TestSpaceError> {
        space.ensure_valid()?;
        let mut vertices: Vec<DVector<f64>> = Vec::new();
        for s in states {
            ProbabilityWeight::new(s.clone()).validate(&space, tol::NORMALIZATION.max(1e-9))?;
            if !vertices.iter().any(|v| (v - &s).norm() < tol::VERTEX_DEDUP) {
                vertices.push(s);
            }
        }
        Ok(FiniteModel {
            space,
            vertices,
            full: false,
        })
    }

    pub fn space(&self) -> &TestSpace {
        &self.space
    }

    pub fn vertices(&self) -> &[DVector<f64>] {
        &self.vertices
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    /// Vertex indices of the face `{α : α(x) = 1}`.
    pub fn face(&self, x: usize, tol: f64) -> Vec<usize> {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| (v[x] - 1.0).abs() <= tol)
            .map(|(i, _)| i)
            .collect()
    }

    /// Every outcome has a state assigning it probability one.
    pub fn is_unital(&self, tol: f64) -> bool {
        (0..self.space.n_outcomes()).all(|x| !self.face(x, tol).is_empty())
    }

    /// Every outcome has a *unique* such state.
    pub fn is_sharp(&self, tol: f64) -> bool {
        (0..self.space.n_outcomes()).all(|x| self.face(x, tol).len() == 1)
    }
}

/// A finite group acting on the outcomes of a test space by permutations
/// mapping tests to tests.
#[derive(Debug, Clone)]
pub struct GroupAction {
    elements: Vec<Vec<usize>>,
    /// `table[i][j]` = index of `elements[i] ∘ elements[j]`.
    table: Vec<Vec<usize>>,
}

const GROUP_CAP: usize = 10_000;

fn compose(g: &[usize], h: &[usize]) -> Vec<usize> {
    // (g ∘ h)(x) = g(h(x))
    h.iter().map(|&i| g[i]).collect()
}

impl GroupAction {
    /// Close a set of generators into a full group, validating that each
    /// permutation maps tests onto tests.
    pub fn from_generators(
        space: &TestSpace,
        generators: &[Vec<usize>],
    ) -> Result<GroupAction, TestSpaceError> {
        let n = space.n_outcomes();
        let test_sets: Vec<BTreeSet<usize>> = space
            .tests()
            .iter()
            .map(|t| t.iter().copied().collect())
            .collect();
        let check = |perm: &Vec<usize>| -> Result<(), TestSpaceError> {
            if perm.len() != n {
                return Err(TestSpaceError::InvalidPermutation(format!(
                    "length {} vs {} outcomes",
                    perm.len(),
                    n
                )));
            }
            let mut seen = vec![false; n];
            for &i in perm {
                if i >= n || seen[i] {
                    return Err(TestSpaceError::InvalidPermutation(
                        "not a bijection".to_string(),
                    ));
                }
                seen[i] = true;
            }
            for t in &test_sets {
                let image: BTreeSet<usize> = t.iter().map(|&x| perm[x]).collect();
                if !test_sets.contains(&image) {
                    return Err(TestSpaceError::InvalidPermutation(
                        "does not map tests to tests".to_string(),
                    ));
                }
            }
            Ok(())
        };
        for g in generators {
            check(g)?;
        }

        let identity: Vec<usize> = (0..n).collect();
        let mut elements: Vec<Vec<usize>> = vec![identity];
        let mut frontier = 0;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            for g in generators {
                let next = compose(g, &current);
                if !elements.contains(&next) {
                    elements.push(next);
                    if elements.len() > GROUP_CAP {
                        return Err(TestSpaceError::GroupTooLarge { cap: GROUP_CAP });
                    }
                }
            }
            frontier += 1;
        }

        let table = elements
            .iter()
            .map(|g| {
                elements
                    .iter()
                    .map(|h| {
                        let gh = compose(g, h);
                        elements.iter().position(|e| *e == gh).expect("closed")
                    })
                    .collect()
            })
            .collect();
        Ok(GroupAction { elements, table })
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn closure_table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_transitive(&self, n_outcomes: usize) -> bool {
        if n_outcomes == 0 {
            return false;
        }
        let orbit: BTreeSet<usize> = self.elements.iter().map(|g| g[0]).collect();
        orbit.len() == n_outcomes
    }

    /// The weight `gα` with `(gα)(gx) = α(x)`.
    pub fn apply_to_weight(&self, g: usize, alpha: &DVector<f64>) -> DVector<f64> {
        let perm = &self.elements[g];
        let mut out = DVector::zeros(alpha.len());
        for (i, &gi) in perm.iter().enumerate() {
            out[gi] = alpha[i];
        }
        out
    }
}

/// Restrict a unital model with a transitive symmetry to the convex hull
/// of the face barycenters; the result is sharp and invariant under the
/// group.
pub fn sharpen_by_symmetry(
    model: &FiniteModel,
    action: &GroupAction,
) -> Result<FiniteModel, TestSpaceError> {
    sharpen_by_symmetry_with(model, action, PolytopeMode::default())
}

pub fn sharpen_by_symmetry_with(
    model: &FiniteModel,
    action: &GroupAction,
    mode: PolytopeMode,
) -> Result<FiniteModel, TestSpaceError> {
    let n = model.space().n_outcomes();
    if !model.is_unital(tol::VERTEX_DEDUP) {
        return Err(TestSpaceError::NotUnital);
    }
    if !action.is_transitive(n) {
        return Err(TestSpaceError::NotTransitive);
    }

    let barycenters: Vec<DVector<f64>> = match mode {
        PolytopeMode::Float => (0..n)
            .map(|x| {
                let face = model.face(x, tol::VERTEX_DEDUP);
                let mut b = DVector::zeros(n);
                for &i in &face {
                    b += &model.vertices()[i];
                }
                b / face.len() as f64
            })
            .collect(),
        PolytopeMode::ExactRational => {
            let exact: Vec<Vec<BigRational>> = model
                .vertices()
                .iter()
                .map(|v| v.iter().map(|&x| BigRational::from_f64_exact(x)).collect())
                .collect();
            let one = <BigRational as PolyScalar>::one();
            (0..n)
                .map(|x| {
                    let face: Vec<&Vec<BigRational>> =
                        exact.iter().filter(|v| v[x] == one).collect();
                    let count = BigRational::from_f64_exact(face.len() as f64);
                    let mut b = vec![<BigRational as PolyScalar>::zero(); n];
                    for v in &face {
                        for (acc, val) in b.iter_mut().zip(v.iter()) {
                            *acc = (&*acc) + val;
                        }
                    }
                    DVector::from_iterator(
                        n,
                        b.into_iter().map(|s| PolyScalar::to_f64(&(s / &count))),
                    )
                })
                .collect()
        }
    };

    // dedup, then drop barycenters interior to the hull of the others
    let mut unique: Vec<DVector<f64>> = Vec::new();
    for b in barycenters {
        if !unique.iter().any(|u| (u - &b).norm() < tol::VERTEX_DEDUP) {
            unique.push(b);
        }
    }
    let extreme: Vec<DVector<f64>> = unique
        .iter()
        .enumerate()
        .filter(|(i, b)| {
            let others: Vec<DVector<f64>> = unique
                .iter()
                .enumerate()
                .filter(|(j, _)| j != i)
                .map(|(_, v)| v.clone())
                .collect();
            others.is_empty() || !in_convex_hull(b, &others, tol::LP)
        })
        .map(|(_, b)| b.clone())
        .collect();

    FiniteModel::with_states(model.space().clone(), extreme)
}

/// Independent feasibility route for "does this space admit any weight at
/// all": the all-ones test vector must lie in the cone spanned by the
/// outcome-incidence columns.
pub fn admits_weight_lp(space: &TestSpace, tol: f64) -> Result<bool, TestSpaceError> {
    space.ensure_valid()?;
    let n_tests = space.tests().len();
    let cols: Vec<DVector<f64>> = (0..space.n_outcomes())
        .map(|x| {
            DVector::from_iterator(
                n_tests,
                space
                    .tests()
                    .iter()
                    .map(|t| if t.contains(&x) { 1.0 } else { 0.0 }),
            )
        })
        .collect();
    let ones = DVector::from_element(n_tests, 1.0);
    match cone_lp_feasible(&cols, &ones, tol) {
        Ok(ConeLp::Feasible { .. }) => Ok(true),
        Ok(ConeLp::Infeasible { .. }) => Ok(false),
        Err(e) => Err(TestSpaceError::Invalid(e.to_string())),
    }
}

/// The square-bit symmetry group of order 8 (generated by the 4-cycle
/// x→y→x'→y' and the swap x↔x').
pub fn square_bit_dihedral(space: &TestSpace) -> GroupAction {
    let r = vec![2, 3, 1, 0];
    let m = vec![1, 0, 2, 3];
    GroupAction::from_generators(space, &[r, m]).expect("square-bit symmetries")
}

/// The rotation subgroup of order 4.
pub fn square_bit_rotations(space: &TestSpace) -> GroupAction {
    let r = vec![2, 3, 1, 0];
    GroupAction::from_generators(space, &[r]).expect("square-bit rotation")
}

/// The diamond bit: the square-bit space with states restricted to the
/// convex hull of the four side midpoints.
pub fn diamond_bit() -> FiniteModel {
    let space = TestSpace::square_bit();
    let states = vec![
        DVector::from_row_slice(&[1.0, 0.0, 0.5, 0.5]),
        DVector::from_row_slice(&[0.0, 1.0, 0.5, 0.5]),
        DVector::from_row_slice(&[0.5, 0.5, 1.0, 0.0]),
        DVector::from_row_slice(&[0.5, 0.5, 0.0, 1.0]),
    ];
    FiniteModel::with_states(space, states).expect("diamond bit states are weights")
}
