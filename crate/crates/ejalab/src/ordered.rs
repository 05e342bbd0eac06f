//! The three ordered coordinate spaces of a probabilistic model — the state
//! span `V(A)`, its dual `V*(A)`, and the effect span `E(A)` — together with
//! cone membership, effects, the order unit, and processes with duals.
//!
//! Coordinates are fixed at construction: a maximal affinely independent
//! subset of state vertices is chosen as the basis of `V(A)`; elements of
//! `V(A)` are stored as coefficient vectors over that basis, and functionals
//! (`V*(A)` = `E(A)` as vector spaces) as their values at the basis states.
//! The natural pairing is then the dot product, and dual maps are plain
//! transposes.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::numkernel::{cone_lp_feasible, ConeLp, NumError};
use crate::testspace::FiniteModel;
use crate::tol;

#[derive(Debug, Error)]
pub enum OrderedError {
    #[error("model has no states; cannot span V(A)")]
    NoStates,
    #[error("order unit differs across tests (residual {residual:.3e})")]
    InconsistentUnit { residual: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("state vertex does not lie in the span of the chosen basis (residual {residual:.3e})")]
    BasisResidual { residual: f64 },
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Representation of a cone inside a coordinate space.
#[derive(Debug, Clone)]
pub enum ConeRep {
    /// Nonnegative combinations of the listed generators.
    Generators(Vec<DVector<f64>>),
    /// Functionals nonnegative (under the dot pairing) on the listed
    /// elements.
    NonnegativeOn(Vec<DVector<f64>>),
}

/// One ordered coordinate space.
#[derive(Debug, Clone)]
pub struct OrderedSpace {
    pub dim: usize,
    pub labels: Vec<String>,
    pub cone: ConeRep,
    /// Order unit (for the functional-side spaces) or the normalization
    /// functional it pairs with (for `V(A)`); all-ones in these coordinates.
    pub unit: DVector<f64>,
}

/// Which cone a membership query refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhichCone {
    EffectPlus,
    VPlus,
    VStarPlus,
}

/// Membership verdict with its certificate.
#[derive(Debug, Clone)]
pub struct ConeMembership {
    pub member: bool,
    pub certificate: Certificate,
}

#[derive(Debug, Clone)]
pub enum Certificate {
    /// Nonnegative coefficients over the cone generators reconstructing the
    /// query vector.
    Coefficients(DVector<f64>),
    /// Functional nonnegative on the generators, negative on the query.
    Separating(DVector<f64>),
    /// Evaluations against the defining elements (constraint-form cones);
    /// membership iff all are ≥ −tol.
    Evaluations(DVector<f64>),
}

/// The spaces of one finite model, sharing coordinates.
#[derive(Debug, Clone)]
pub struct ModelSpaces {
    pub v: OrderedSpace,
    pub vstar: OrderedSpace,
    pub effects: OrderedSpace,
    /// Indices of the vertices chosen as the `V(A)` basis.
    pub basis_vertices: Vec<usize>,
    /// All state vertices in `V(A)` coordinates.
    pub vertex_coords: Vec<DVector<f64>>,
    /// Evaluation effect `x̂` per outcome, in functional coordinates.
    pub evaluation_effects: Vec<DVector<f64>>,
    /// Basis states as raw weight vectors (|X| × dim), for converting
    /// between ℝ^X and `V(A)` coordinates.
    pub basis_matrix: DMatrix<f64>,
}

/// Construct `V(A)`, `V*(A)` and `E(A)` from a finite model.
pub fn build_spaces(model: &FiniteModel) -> Result<ModelSpaces, OrderedError> {
    let verts = model.vertices();
    if verts.is_empty() {
        return Err(OrderedError::NoStates);
    }
    let nx = model.space().n_outcomes();

    // greedy maximal independent subset of vertices as the V(A) basis
    let mut basis_vertices: Vec<usize> = Vec::new();
    let mut basis_mat = DMatrix::<f64>::zeros(nx, 0);
    for (i, v) in verts.iter().enumerate() {
        let mut candidate = basis_mat.clone().insert_column(basis_mat.ncols(), 0.0);
        candidate.set_column(basis_mat.ncols(), v);
        if candidate.rank(1e-10) == candidate.ncols() {
            basis_vertices.push(i);
            basis_mat = candidate;
        }
    }
    let dim = basis_vertices.len();

    // coordinates of every vertex over the basis
    let svd = basis_mat.clone().svd(true, true);
    let mut vertex_coords = Vec::with_capacity(verts.len());
    for v in verts {
        let c = svd.solve(v, 1e-12).map_err(|_| OrderedError::BasisResidual {
            residual: f64::INFINITY,
        })?;
        let residual = (&basis_mat * &c - v).norm();
        if residual > 1e-8 {
            return Err(OrderedError::BasisResidual { residual });
        }
        vertex_coords.push(c);
    }

    // evaluation effects: x̂ = (α_b(x))_b over the basis states
    let evaluation_effects: Vec<DVector<f64>> = (0..nx)
        .map(|x| DVector::from_iterator(dim, basis_vertices.iter().map(|&b| verts[b][x])))
        .collect();

    // order unit from each test; all must agree
    let units: Vec<DVector<f64>> = model
        .space()
        .tests()
        .iter()
        .map(|test| {
            let mut u = DVector::<f64>::zeros(dim);
            for &x in test {
                u += &evaluation_effects[x];
            }
            u
        })
        .collect();
    let unit = units[0].clone();
    for u in &units[1..] {
        let residual = (u - &unit).norm();
        if residual > tol::NORMALIZATION * (dim as f64).sqrt().max(1.0) {
            return Err(OrderedError::InconsistentUnit { residual });
        }
    }

    let outcome_labels: Vec<String> = model.space().outcomes().to_vec();
    let basis_labels: Vec<String> = basis_vertices.iter().map(|i| format!("ω{i}")).collect();

    let v = OrderedSpace {
        dim,
        labels: basis_labels.clone(),
        cone: ConeRep::Generators(vertex_coords.clone()),
        unit: DVector::from_element(dim, 1.0),
    };
    let vstar = OrderedSpace {
        dim,
        labels: basis_labels,
        cone: ConeRep::NonnegativeOn(vertex_coords.clone()),
        unit: unit.clone(),
    };
    let effects = OrderedSpace {
        dim,
        labels: outcome_labels,
        cone: ConeRep::Generators(evaluation_effects.clone()),
        unit: unit.clone(),
    };
    Ok(ModelSpaces {
        v,
        vstar,
        effects,
        basis_vertices,
        vertex_coords,
        evaluation_effects,
        basis_matrix: basis_mat,
    })
}

impl ModelSpaces {
    pub fn dim(&self) -> usize {
        self.v.dim
    }

    /// `V(A)` coordinates of a raw ℝ^X vector lying in the state span.
    pub fn coords_of(&self, raw: &DVector<f64>) -> Result<DVector<f64>, OrderedError> {
        let svd = self.basis_matrix.clone().svd(true, true);
        let c = svd
            .solve(raw, 1e-12)
            .map_err(|_| OrderedError::BasisResidual {
                residual: f64::INFINITY,
            })?;
        let residual = (&self.basis_matrix * &c - raw).norm();
        if residual > 1e-8 * raw.norm().max(1.0) {
            return Err(OrderedError::BasisResidual { residual });
        }
        Ok(c)
    }

    /// Raw ℝ^X vector of a `V(A)` coordinate vector.
    pub fn raw_of(&self, coords: &DVector<f64>) -> DVector<f64> {
        &self.basis_matrix * coords
    }

    /// The order unit `u_A` in functional coordinates.
    pub fn unit(&self) -> &DVector<f64> {
        &self.effects.unit
    }

    /// Evaluate functional `f` at the state with `V(A)` coordinates `c`.
    pub fn pair(&self, f: &DVector<f64>, c: &DVector<f64>) -> f64 {
        f.dot(c)
    }

    /// Cone membership with certificate.
    pub fn in_cone(
        &self,
        which: WhichCone,
        v: &DVector<f64>,
        tol: f64,
    ) -> Result<ConeMembership, OrderedError> {
        if v.len() != self.dim() {
            return Err(OrderedError::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        match which {
            WhichCone::EffectPlus | WhichCone::VPlus => {
                let gens = match which {
                    WhichCone::EffectPlus => &self.evaluation_effects,
                    _ => &self.vertex_coords,
                };
                match cone_lp_feasible(gens, v, tol)? {
                    ConeLp::Feasible { coefficients } => Ok(ConeMembership {
                        member: true,
                        certificate: Certificate::Coefficients(coefficients),
                    }),
                    ConeLp::Infeasible { separating } => Ok(ConeMembership {
                        member: false,
                        certificate: Certificate::Separating(separating),
                    }),
                }
            }
            WhichCone::VStarPlus => {
                let evals = DVector::from_iterator(
                    self.vertex_coords.len(),
                    self.vertex_coords.iter().map(|c| v.dot(c)),
                );
                let member = evals.iter().all(|e| *e >= -tol);
                Ok(ConeMembership {
                    member,
                    certificate: Certificate::Evaluations(evals),
                })
            }
        }
    }

    /// Effects take values in [0,1] on every state.
    pub fn is_effect(&self, f: &DVector<f64>, tol: f64) -> bool {
        self.vertex_coords.iter().all(|c| {
            let p = f.dot(c);
            (-tol..=1.0 + tol).contains(&p)
        })
    }

    /// Order-unit bound: smallest N with `f ≤ N·u` on states, computed as
    /// `max |f(α)|` over the vertices.
    pub fn order_unit_bound(&self, f: &DVector<f64>) -> f64 {
        self.vertex_coords
            .iter()
            .map(|c| f.dot(c).abs())
            .fold(0.0, f64::max)
    }
}

/// A positive linear map `V(A) → V(B)` in basis coordinates.
#[derive(Debug, Clone)]
pub struct Process {
    pub matrix: DMatrix<f64>,
    pub positive: bool,
    pub normalization_nonincreasing: bool,
}

impl Process {
    /// Check positivity (cone generators map into the target cone) and the
    /// subnormalization contract `T*(u_B) ≤ u_A`, and record the flags.
    pub fn checked(
        matrix: DMatrix<f64>,
        domain: &ModelSpaces,
        codomain: &ModelSpaces,
        tol: f64,
    ) -> Result<Process, OrderedError> {
        if matrix.ncols() != domain.dim() || matrix.nrows() != codomain.dim() {
            return Err(OrderedError::DimensionMismatch {
                expected: domain.dim(),
                got: matrix.ncols(),
            });
        }
        let mut positive = true;
        for g in &domain.vertex_coords {
            let img = &matrix * g;
            if !codomain.in_cone(WhichCone::VPlus, &img, tol)?.member {
                positive = false;
                break;
            }
        }
        // T*(u_B) ≤ u_A  ⇔  u_A − Tᵀu_B is nonnegative on Ω(A)
        let dual_unit = matrix.transpose() * codomain.unit();
        let gap = domain.unit() - &dual_unit;
        let normalization_nonincreasing = domain
            .in_cone(WhichCone::VStarPlus, &gap, tol)?
            .member;
        Ok(Process {
            matrix,
            positive,
            normalization_nonincreasing,
        })
    }

    /// The dual map `T* : V*(B) → V*(A)`, i.e. the transpose in these
    /// coordinates. Note the dual is *not* required to preserve the effect
    /// cones `E₊`.
    pub fn dual_matrix(&self) -> DMatrix<f64> {
        self.matrix.transpose()
    }
}

/// Outcome of a probabilistic-reversibility search.
#[derive(Debug, Clone)]
pub struct Reversibility {
    pub reversible: bool,
    /// Largest probability `p ∈ (0,1]` with `S∘T = p·id` for an admissible
    /// `S` (0 when not reversible).
    pub p: f64,
    pub inverse: Option<DMatrix<f64>>,
}

/// Abstraction over state cones used by the reversibility search: finite
/// polytope cones and algebraic (Jordan) cones both implement it.
pub trait StateCone {
    fn dim(&self) -> usize;
    /// Normalized states spanning / probing the cone.
    fn state_probes(&self) -> Vec<DVector<f64>>;
    /// Membership of an arbitrary vector in the positive cone.
    fn in_positive_cone(&self, v: &DVector<f64>, tol: f64) -> bool;
    /// `max_α f(α)` over the state space (exact for both implementations).
    fn max_over_states(&self, f: &DVector<f64>) -> f64;
    /// The order unit in pairing coordinates.
    fn unit_functional(&self) -> DVector<f64>;
}

impl StateCone for ModelSpaces {
    fn dim(&self) -> usize {
        self.dim()
    }
    fn state_probes(&self) -> Vec<DVector<f64>> {
        self.vertex_coords.clone()
    }
    fn in_positive_cone(&self, v: &DVector<f64>, tol: f64) -> bool {
        self.in_cone(WhichCone::VPlus, v, tol)
            .map(|m| m.member)
            .unwrap_or(false)
    }
    fn max_over_states(&self, f: &DVector<f64>) -> f64 {
        self.vertex_coords
            .iter()
            .map(|c| f.dot(c))
            .fold(f64::NEG_INFINITY, f64::max)
    }
    fn unit_functional(&self) -> DVector<f64> {
        self.effects.unit.clone()
    }
}

/// Search for a positive `S` with `S∘T = p·id`, restricted to the candidate
/// `S ∝ T⁻¹` (sufficient for every instance this workbench checks). The
/// scale is fixed by the largest `p` keeping `S` normalization-nonincreasing,
/// capped at 1.
pub fn is_reversible<C: StateCone>(t: &DMatrix<f64>, space: &C, tol: f64) -> Reversibility {
    let not = Reversibility {
        reversible: false,
        p: 0.0,
        inverse: None,
    };
    let Some(inv) = t.clone().try_inverse() else {
        return not;
    };
    // positivity of the candidate inverse on the cone probes
    for probe in space.state_probes() {
        let img = &inv * &probe;
        if !space.in_positive_cone(&img, tol.max(1e-8)) {
            return not;
        }
    }
    // largest admissible scale: p·(S₀)*(u) ≤ u on states
    let dual_unit = inv.transpose() * space.unit_functional();
    let m = space.max_over_states(&dual_unit);
    if !(m > 0.0) || !m.is_finite() {
        return not;
    }
    let p = (1.0 / m).min(1.0);
    Reversibility {
        reversible: true,
        p,
        inverse: Some(inv * p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testspace::{diamond_bit, FiniteModel, TestSpace};

    fn dv(v: &[f64]) -> DVector<f64> {
        DVector::from_row_slice(v)
    }

    #[test]
    fn square_bit_dimensions_and_generators() {
        let model = FiniteModel::full(TestSpace::square_bit()).unwrap();
        let spaces = build_spaces(&model).unwrap();
        // rank oracle: the 4×4 evaluation matrix has rank 3
        let eval = DMatrix::<f64>::from_fn(4, 4, |v, x| model.vertices()[v][x]);
        assert_eq!(eval.rank(1e-10), 3);
        assert_eq!(spaces.dim(), 3);
        if let ConeRep::Generators(g) = &spaces.effects.cone {
            assert_eq!(g.len(), 4);
        } else {
            panic!("effect cone should be generator-represented");
        }
    }

    #[test]
    fn classical_spaces_coincide() {
        let model = FiniteModel::full(TestSpace::classical(4)).unwrap();
        let spaces = build_spaces(&model).unwrap();
        assert_eq!(spaces.dim(), 4);
        // all cones coincide: every V*₊ extreme direction is in E₊ and
        // conversely
        for g in &spaces.evaluation_effects {
            assert!(spaces.in_cone(WhichCone::VStarPlus, g, 1e-10).unwrap().member);
        }
        for c in &spaces.vertex_coords {
            assert!(spaces.in_cone(WhichCone::EffectPlus, c, 1e-10).unwrap().member);
        }
    }

    #[test]
    fn unit_is_effect_and_in_effect_cone() {
        for model in [
            FiniteModel::full(TestSpace::square_bit()).unwrap(),
            diamond_bit(),
            FiniteModel::full(TestSpace::classical(3)).unwrap(),
        ] {
            let spaces = build_spaces(&model).unwrap();
            let u = spaces.unit().clone();
            assert!(spaces.is_effect(&u, 1e-10));
            assert!(!spaces.is_effect(&(&u * 2.0), 1e-10));
            assert!(spaces.in_cone(WhichCone::EffectPlus, &u, 1e-10).unwrap().member);
            // every evaluation effect is an effect
            for g in &spaces.evaluation_effects {
                assert!(spaces.is_effect(g, 1e-10));
            }
            // −x̂ is not positive on a unital model
            let neg = -&spaces.evaluation_effects[0];
            assert!(!spaces.in_cone(WhichCone::VStarPlus, &neg, 1e-10).unwrap().member);
        }
    }

    /// The diamond-bit functional x̂+ŷ−½u is positive on states but outside
    /// the effect cone.
    #[test]
    fn diamond_bit_cone_gap() {
        let model = diamond_bit();
        let spaces = build_spaces(&model).unwrap();
        let x = model.space().outcome_index("x").unwrap();
        let y = model.space().outcome_index("y").unwrap();
        let f = &spaces.evaluation_effects[x] + &spaces.evaluation_effects[y]
            - spaces.unit() * 0.5;
        let in_vstar = spaces.in_cone(WhichCone::VStarPlus, &f, 1e-10).unwrap();
        assert!(in_vstar.member);
        let in_e = spaces.in_cone(WhichCone::EffectPlus, &f, 1e-10).unwrap();
        assert!(!in_e.member);
        match in_e.certificate {
            Certificate::Separating(sep) => {
                if let ConeRep::Generators(gens) = &spaces.effects.cone {
                    for g in gens {
                        assert!(sep.dot(g) >= -1e-10);
                    }
                }
                assert!(sep.dot(&f) <= -1e-9);
            }
            _ => panic!("expected a separating certificate"),
        }
    }

    #[test]
    fn dual_process_is_transpose_and_involutive() {
        let model = FiniteModel::full(TestSpace::classical(3)).unwrap();
        let spaces = build_spaces(&model).unwrap();
        // a column-stochastic map on the classical 3-simplex
        let t = DMatrix::from_row_slice(
            3,
            3,
            &[0.5, 0.25, 0.0, 0.25, 0.5, 1.0, 0.25, 0.25, 0.0],
        );
        let p = Process::checked(t.clone(), &spaces, &spaces, 1e-10).unwrap();
        assert!(p.positive);
        assert!(p.normalization_nonincreasing);
        // the dual's action is the oracle: T*(f)(α) = f(Tα) on a grid
        let f = dv(&[0.3, -0.2, 1.0]);
        for c in &spaces.vertex_coords {
            let lhs = (p.dual_matrix() * &f).dot(c);
            let rhs = f.dot(&(&t * c));
            assert!((lhs - rhs).abs() < 1e-12);
        }
        // u preserved exactly for a stochastic map
        let du = p.dual_matrix() * spaces.unit();
        assert!((du - spaces.unit()).norm() < 1e-12);
        // involution
        assert_eq!(p.dual_matrix().transpose(), p.matrix);
    }

    #[test]
    fn halving_map_is_subnormalizing() {
        let model = FiniteModel::full(TestSpace::square_bit()).unwrap();
        let spaces = build_spaces(&model).unwrap();
        let t = DMatrix::<f64>::identity(3, 3) * 0.5;
        let p = Process::checked(t, &spaces, &spaces, 1e-10).unwrap();
        assert!(p.positive && p.normalization_nonincreasing);
        let du = p.dual_matrix() * spaces.unit();
        assert!((du - spaces.unit() * 0.5).norm() < 1e-12);
    }

    #[test]
    fn identity_is_reversible_with_p_one() {
        let model = FiniteModel::full(TestSpace::square_bit()).unwrap();
        let spaces = build_spaces(&model).unwrap();
        let rev = is_reversible(&DMatrix::identity(3, 3), &spaces, 1e-10);
        assert!(rev.reversible);
        assert!((rev.p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singular_map_is_not_reversible() {
        let model = FiniteModel::full(TestSpace::square_bit()).unwrap();
        let spaces = build_spaces(&model).unwrap();
        let mut t = DMatrix::<f64>::identity(3, 3);
        t[(2, 2)] = 0.0;
        let rev = is_reversible(&t, &spaces, 1e-10);
        assert!(!rev.reversible);
    }

    #[test]
    fn order_unit_bound_is_max_abs() {
        let model = diamond_bit();
        let spaces = build_spaces(&model).unwrap();
        let f = &spaces.evaluation_effects[0] * 3.0;
        let bound = spaces.order_unit_bound(&f);
        assert!((bound - 3.0).abs() < 1e-9);
    }
}
