//! Vertex enumeration for small polytopes `{α : Aα = b, Cα ≥ d}` given in
//! constraint form, generic over the scalar so the same enumeration runs in
//! f64 or in exact rational arithmetic.
//!
//! A vertex is a feasible point at which the equalities plus some active
//! inequalities have full rank; every vertex is found by trying the
//! (n − rank A)-subsets of inequality rows, which is fine at the ≤ 20
//! variable scale this module is used at.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};

/// Scalar the enumeration runs over.
pub trait PolyScalar: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    /// Exact conversion from a binary float.
    fn from_f64_exact(v: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    /// Pivot nullity test (tolerance-based for floats, exact for rationals).
    fn is_pivot_zero(&self) -> bool;
    /// Feasibility test `self ≥ 0`, with slack for floats.
    fn ge_zero(&self) -> bool;
    /// Vertex dedup comparison.
    fn approx_eq(&self, o: &Self) -> bool;
}

impl PolyScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64_exact(v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_pivot_zero(&self) -> bool {
        self.abs() <= 1e-11
    }
    fn ge_zero(&self) -> bool {
        *self >= -1e-9
    }
    fn approx_eq(&self, o: &Self) -> bool {
        (self - o).abs() <= crate::tol::VERTEX_DEDUP
    }
}

impl PolyScalar for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        BigRational::from_integer(BigInt::from(1))
    }
    fn from_f64_exact(v: f64) -> Self {
        BigRational::from_f64(v).expect("finite float")
    }
    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_pivot_zero(&self) -> bool {
        self.is_zero()
    }
    fn ge_zero(&self) -> bool {
        !self.is_negative()
    }
    fn approx_eq(&self, o: &Self) -> bool {
        self == o
    }
}

/// Constraint system `eq·α = rhs`, `ineq·α ≥ rhs` over `n` variables.
/// Nonnegativity of coordinates, when wanted, is supplied by the caller as
/// inequality rows.
pub struct ConstraintSystem<S> {
    pub n: usize,
    pub eq: Vec<(Vec<S>, S)>,
    pub ineq: Vec<(Vec<S>, S)>,
}

fn rank<S: PolyScalar>(rows: &[Vec<S>], n: usize) -> usize {
    let mut mat: Vec<Vec<S>> = rows.to_vec();
    let mut r = 0;
    for col in 0..n {
        // best pivot in this column below row r
        let pivot = (r..mat.len())
            .filter(|&i| !mat[i][col].is_pivot_zero())
            .max_by(|&a, &b| {
                mat[a][col]
                    .to_f64()
                    .abs()
                    .total_cmp(&mat[b][col].to_f64().abs())
            });
        let Some(p) = pivot else { continue };
        mat.swap(r, p);
        for i in 0..mat.len() {
            if i != r && !mat[i][col].is_pivot_zero() {
                let f = mat[i][col].div(&mat[r][col]);
                for c in col..n {
                    let delta = f.mul(&mat[r][c]);
                    mat[i][c] = mat[i][c].sub(&delta);
                }
            }
        }
        r += 1;
        if r == mat.len() {
            break;
        }
    }
    r
}

/// Solve `rows·α = rhs` for a unique α; `None` when the system is
/// rank-deficient or inconsistent.
fn solve_unique<S: PolyScalar>(rows: &[Vec<S>], rhs: &[S], n: usize) -> Option<Vec<S>> {
    let m = rows.len();
    let mut mat: Vec<Vec<S>> = rows.to_vec();
    let mut b: Vec<S> = rhs.to_vec();
    let mut pivot_col: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let pivot = (r..m)
            .filter(|&i| !mat[i][col].is_pivot_zero())
            .max_by(|&a, &b| {
                mat[a][col]
                    .to_f64()
                    .abs()
                    .total_cmp(&mat[b][col].to_f64().abs())
            });
        let Some(p) = pivot else { continue };
        mat.swap(r, p);
        b.swap(r, p);
        for i in 0..m {
            if i != r && !mat[i][col].is_pivot_zero() {
                let f = mat[i][col].div(&mat[r][col]);
                for c in 0..n {
                    let delta = f.mul(&mat[r][c]);
                    mat[i][c] = mat[i][c].sub(&delta);
                }
                let delta = f.mul(&b[r]);
                b[i] = b[i].sub(&delta);
            }
        }
        pivot_col.push(col);
        r += 1;
        if r == m {
            break;
        }
    }
    if r < n {
        return None; // underdetermined
    }
    // consistency of the remaining rows
    for i in r..m {
        if !b[i].is_pivot_zero() {
            return None;
        }
    }
    let mut x = vec![S::zero(); n];
    for (row, &col) in pivot_col.iter().enumerate() {
        x[col] = b[row].div(&mat[row][col]);
    }
    Some(x)
}

/// All vertices of the (assumed bounded) constraint set.
pub fn enumerate_vertices<S: PolyScalar>(sys: &ConstraintSystem<S>) -> Vec<Vec<S>> {
    let n = sys.n;
    let eq_rows: Vec<Vec<S>> = sys.eq.iter().map(|(r, _)| r.clone()).collect();
    let eq_rank = rank(&eq_rows, n);
    let need = n - eq_rank;

    let feasible = |x: &[S]| -> bool {
        sys.eq.iter().all(|(row, rhs)| {
            let dot = row
                .iter()
                .zip(x)
                .fold(S::zero(), |acc, (a, b)| acc.add(&a.mul(b)));
            dot.sub(rhs).is_pivot_zero()
        }) && sys.ineq.iter().all(|(row, rhs)| {
            let dot = row
                .iter()
                .zip(x)
                .fold(S::zero(), |acc, (a, b)| acc.add(&a.mul(b)));
            dot.sub(rhs).ge_zero()
        })
    };

    let mut vertices: Vec<Vec<S>> = Vec::new();
    let push_vertex = |x: Vec<S>, vertices: &mut Vec<Vec<S>>| {
        if !vertices
            .iter()
            .any(|v| v.iter().zip(&x).all(|(a, b)| a.approx_eq(b)))
        {
            vertices.push(x);
        }
    };

    if need == 0 {
        let rows: Vec<Vec<S>> = sys.eq.iter().map(|(r, _)| r.clone()).collect();
        let rhs: Vec<S> = sys.eq.iter().map(|(_, b)| b.clone()).collect();
        if let Some(x) = solve_unique(&rows, &rhs, n) {
            if feasible(&x) {
                push_vertex(x, &mut vertices);
            }
        }
        return vertices;
    }

    if sys.ineq.len() < need {
        return vertices;
    }

    // iterate over `need`-subsets of inequality rows
    let k = sys.ineq.len();
    let mut subset: Vec<usize> = (0..need).collect();
    loop {
        let mut rows: Vec<Vec<S>> = eq_rows.clone();
        let mut rhs: Vec<S> = sys.eq.iter().map(|(_, b)| b.clone()).collect();
        for &i in &subset {
            rows.push(sys.ineq[i].0.clone());
            rhs.push(sys.ineq[i].1.clone());
        }
        if let Some(x) = solve_unique(&rows, &rhs, n) {
            if feasible(&x) {
                push_vertex(x, &mut vertices);
            }
        }

        // advance subset
        let mut i = need;
        loop {
            if i == 0 {
                return vertices;
            }
            i -= 1;
            if subset[i] != i + k - need {
                break;
            }
        }
        subset[i] += 1;
        for j in i + 1..need {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Unit square as {α ≥ 0, α ≤ 1} in 2 variables.
    #[test]
    fn unit_square_vertices() {
        let sys = ConstraintSystem::<f64> {
            n: 2,
            eq: vec![],
            ineq: vec![
                (vec![1.0, 0.0], 0.0),
                (vec![0.0, 1.0], 0.0),
                (vec![-1.0, 0.0], -1.0),
                (vec![0.0, -1.0], -1.0),
            ],
        };
        let verts = enumerate_vertices(&sys);
        assert_eq!(verts.len(), 4);
    }

    #[test]
    fn simplex_rational() {
        let one = <BigRational as PolyScalar>::one();
        let zero = <BigRational as PolyScalar>::zero();
        let sys = ConstraintSystem::<BigRational> {
            n: 3,
            eq: vec![(vec![one.clone(), one.clone(), one.clone()], one.clone())],
            ineq: (0..3)
                .map(|i| {
                    let mut row = vec![zero.clone(); 3];
                    row[i] = one.clone();
                    (row, zero.clone())
                })
                .collect(),
        };
        let verts = enumerate_vertices(&sys);
        assert_eq!(verts.len(), 3);
        for v in &verts {
            let s: f64 = v.iter().map(|x| PolyScalar::to_f64(x)).sum();
            assert_eq!(s, 1.0);
        }
    }
}
