//! Dense phase-1 simplex for conic feasibility at desk scale (≤ 64
//! variables), with certificates on both answers: feasible queries return
//! the nonnegative coefficients, infeasible ones a separating functional.

use nalgebra::DVector;

use super::NumError;

/// Answer to a cone-membership query.
#[derive(Debug, Clone)]
pub enum ConeLp {
    /// `target = Σ tᵢ·genᵢ` with `tᵢ ≥ 0`.
    Feasible { coefficients: DVector<f64> },
    /// A functional nonnegative on every generator and negative on the
    /// target (normalized to unit length).
    Infeasible { separating: DVector<f64> },
}

impl ConeLp {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ConeLp::Feasible { .. })
    }
}

/// Decide whether `target` lies in the cone generated by `generators`.
///
/// Solved as a phase-1 simplex (Bland's rule, dense tableau). The
/// feasibility threshold is `tol · max(1, ‖target‖)`.
pub fn cone_lp_feasible(
    generators: &[DVector<f64>],
    target: &DVector<f64>,
    tol: f64,
) -> Result<ConeLp, NumError> {
    if generators.is_empty() || generators.iter().all(|g| g.norm() == 0.0) {
        return Err(NumError::DegenerateGenerators);
    }
    let d = target.len();
    for g in generators {
        if g.len() != d {
            return Err(NumError::DimensionMismatch {
                expected: d,
                got: g.len(),
            });
        }
    }
    let m = generators.len();

    // row signs making the right-hand side nonnegative
    let signs: Vec<f64> = (0..d)
        .map(|i| if target[i] < 0.0 { -1.0 } else { 1.0 })
        .collect();

    // tableau over columns [generators | artificials], basis = artificials
    let cols = m + d;
    let mut tab = vec![vec![0.0f64; cols]; d];
    let mut rhs = vec![0.0f64; d];
    for i in 0..d {
        for (j, g) in generators.iter().enumerate() {
            tab[i][j] = signs[i] * g[i];
        }
        tab[i][m + i] = 1.0;
        rhs[i] = signs[i] * target[i];
    }
    let mut basis: Vec<usize> = (m..m + d).collect();

    const PIVOT_EPS: f64 = 1e-11;
    let max_iter = 50 * (cols + 10);
    let mut iter = 0;
    loop {
        // reduced costs r_j = c_j - Σ_{i basic artificial} tab[i][j]
        let mut entering = None;
        for j in 0..cols {
            if basis.contains(&j) {
                continue;
            }
            let c_j = if j >= m { 1.0 } else { 0.0 };
            let mut r = c_j;
            for i in 0..d {
                if basis[i] >= m {
                    r -= tab[i][j];
                }
            }
            if r < -PIVOT_EPS {
                entering = Some(j); // Bland: first eligible index
                break;
            }
        }
        let Some(j) = entering else { break };

        // ratio test, ties broken by smallest basis index (Bland)
        let mut leaving: Option<(usize, f64)> = None;
        for i in 0..d {
            if tab[i][j] > PIVOT_EPS {
                let ratio = rhs[i] / tab[i][j];
                match leaving {
                    None => leaving = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr - PIVOT_EPS
                            || ((ratio - lr).abs() <= PIVOT_EPS && basis[i] < basis[li])
                        {
                            leaving = Some((i, ratio));
                        }
                    }
                }
            }
        }
        // phase-1 objective is bounded below by 0, so a pivot row exists
        let Some((r, _)) = leaving else { break };

        // pivot
        let piv = tab[r][j];
        for v in tab[r].iter_mut() {
            *v /= piv;
        }
        rhs[r] /= piv;
        for i in 0..d {
            if i != r && tab[i][j].abs() > 0.0 {
                let f = tab[i][j];
                for k in 0..cols {
                    tab[i][k] -= f * tab[r][k];
                }
                rhs[i] -= f * rhs[r];
            }
        }
        basis[r] = j;

        iter += 1;
        if iter > max_iter {
            return Err(NumError::SimplexStalled);
        }
    }

    let objective: f64 = (0..d)
        .filter(|&i| basis[i] >= m)
        .map(|i| rhs[i])
        .sum();

    let feas_threshold = tol * target.norm().max(1.0);
    if objective.abs() <= feas_threshold {
        let mut t = DVector::<f64>::zeros(m);
        for i in 0..d {
            if basis[i] < m {
                t[basis[i]] = rhs[i].max(0.0);
            }
        }
        Ok(ConeLp::Feasible { coefficients: t })
    } else {
        // simplex multipliers: y_i = 1 - (reduced cost of artificial i)
        let mut y = DVector::<f64>::zeros(d);
        for i in 0..d {
            let mut r = 1.0;
            for row in 0..d {
                if basis[row] >= m {
                    r -= tab[row][m + i];
                }
            }
            // undo the row flip and negate: f = -σ∘y
            y[i] = -signs[i] * (1.0 - r);
        }
        let norm = y.norm();
        if norm > 0.0 {
            y /= norm;
        }
        Ok(ConeLp::Infeasible { separating: y })
    }
}

/// Membership of `point` in the convex hull of `others` (not the cone):
/// feasibility of `point = Σ tᵢ vᵢ`, `tᵢ ≥ 0`, `Σ tᵢ = 1`, via a lifted
/// cone query.
pub fn in_convex_hull(point: &DVector<f64>, others: &[DVector<f64>], tol: f64) -> bool {
    if others.is_empty() {
        return false;
    }
    let lift = |v: &DVector<f64>| {
        let mut w = DVector::<f64>::zeros(v.len() + 1);
        w.rows_mut(0, v.len()).copy_from(v);
        w[v.len()] = 1.0;
        w
    };
    let gens: Vec<DVector<f64>> = others.iter().map(lift).collect();
    matches!(
        cone_lp_feasible(&gens, &lift(point), tol),
        Ok(ConeLp::Feasible { .. })
    )
}

/// Extreme rays of the dual cone `{y : ⟨y, g⟩ ≥ 0 ∀g}` of a full-dimensional
/// pointed cone given by generators, i.e. the facet normals of the primal
/// cone. Enumerates (d−1)-subsets, so intended for d ≤ ~10.
pub fn dual_cone_generators(generators: &[DVector<f64>], tol: f64) -> Vec<DVector<f64>> {
    let d = generators[0].len();
    let mut out: Vec<DVector<f64>> = Vec::new();
    let push_unique = |v: DVector<f64>, out: &mut Vec<DVector<f64>>| {
        let v = &v / v.norm();
        if !out.iter().any(|w| (w - &v).norm() < 1e-9) {
            out.push(v);
        }
    };
    if d == 1 {
        for cand in [1.0f64, -1.0] {
            let v = DVector::from_element(1, cand);
            if generators.iter().all(|g| v.dot(g) >= -tol) {
                push_unique(v, &mut out);
            }
        }
        return out;
    }

    let k = generators.len();
    let mut subset: Vec<usize> = (0..d - 1).collect();
    if k < d - 1 {
        return out;
    }
    loop {
        // kernel of the subset's span; pad to square so the thin SVD
        // still carries the null directions
        let mat = nalgebra::DMatrix::<f64>::from_fn(d, d, |r, c| {
            if r < d - 1 {
                generators[subset[r]][c]
            } else {
                0.0
            }
        });
        let svd = mat.svd(false, true);
        let vt = svd.v_t.as_ref().unwrap();
        let smax = svd.singular_values.max();
        let null_count = svd
            .singular_values
            .iter()
            .filter(|s| **s <= 1e-10 * smax.max(1.0))
            .count();
        if null_count == 1 {
            let n: DVector<f64> = vt.row(d - 1).transpose();
            let evals: Vec<f64> = generators.iter().map(|g| n.dot(g)).collect();
            if evals.iter().all(|e| *e >= -tol) {
                push_unique(n.clone(), &mut out);
            } else if evals.iter().all(|e| *e <= tol) {
                push_unique(-n, &mut out);
            }
        }

        // next (d-1)-subset of {0..k}
        let mut i = d - 1;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if subset[i] != i + k - (d - 1) {
                break;
            }
        }
        subset[i] += 1;
        for j in i + 1..d - 1 {
            subset[j] = subset[j - 1] + 1;
        }
    }
}
