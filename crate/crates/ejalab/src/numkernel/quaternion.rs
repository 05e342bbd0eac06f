//! Quaternion arithmetic over f64, the scalar ring for the quaternionic
//! matrix family.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

/// A quaternion `w + x·i + y·j + z·k` with the Hamilton relations
/// `i² = j² = k² = ijk = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub fn from_complex(c: Complex64) -> Self {
        Quaternion::new(c.re, c.im, 0.0, 0.0)
    }

    /// Conjugation negates the three imaginary components.
    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Reversion: the anti-automorphism fixing 1, i, j and negating k.
    pub fn reversion(self) -> Self {
        Quaternion::new(self.w, self.x, self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, t: f64) -> Self {
        Quaternion::new(self.w * t, self.x * t, self.y * t, self.z * t)
    }

    /// Multiplicative inverse `q̄ / |q|²`; `None` for (numerically) zero input.
    pub fn inverse(self) -> Option<Self> {
        let n = self.norm_sqr();
        if n == 0.0 {
            return None;
        }
        Some(self.conj().scale(1.0 / n))
    }

    pub fn is_real(self, tol: f64) -> bool {
        self.x.abs() <= tol && self.y.abs() <= tol && self.z.abs() <= tol
    }

    pub fn is_complex(self, tol: f64) -> bool {
        self.y.abs() <= tol && self.z.abs() <= tol
    }

    /// Split `q = a + b·j` with `a = w + x·i`, `b = y + z·i`.
    pub fn complex_parts(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.w, self.x),
            Complex64::new(self.y, self.z),
        )
    }

    /// Inverse of [`Quaternion::complex_parts`].
    pub fn from_complex_parts(a: Complex64, b: Complex64) -> Self {
        Quaternion::new(a.re, a.im, b.re, b.im)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Self) -> Self {
        Quaternion::new(
            self.w + rhs.w,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
        )
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Self {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    /// Hamilton product.
    fn mul(self, q: Self) -> Self {
        let p = self;
        Quaternion::new(
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
        )
    }
}

/// Hamilton product as a named operation.
pub fn quat_mul(p: Quaternion, q: Quaternion) -> Quaternion {
    p * q
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn defining_relations() {
        let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(i * i, -Quaternion::ONE);
        assert_eq!(j * j, -Quaternion::ONE);
        assert_eq!(k * k, -Quaternion::ONE);
    }

    #[test]
    fn unit_inverse_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let q = Quaternion::new(
                rng.random::<f64>() - 0.5,
                rng.random::<f64>() - 0.5,
                rng.random::<f64>() - 0.5,
                rng.random::<f64>() - 0.5,
            );
            let u = q.scale(1.0 / q.norm());
            let prod = u * u.inverse().unwrap();
            assert!((prod - Quaternion::ONE).norm() < 1e-12);
        }
    }

    /// |p·q| = |p||q|, with the norm of the product expanded directly from
    /// components as the oracle.
    #[test]
    fn norm_multiplicativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let mut sample = || {
                Quaternion::new(
                    rng.random::<f64>() * 2.0 - 1.0,
                    rng.random::<f64>() * 2.0 - 1.0,
                    rng.random::<f64>() * 2.0 - 1.0,
                    rng.random::<f64>() * 2.0 - 1.0,
                )
            };
            let (p, q) = (sample(), sample());
            let lhs = {
                // oracle: expand the product componentwise, independent of Mul
                let w = p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z;
                let x = p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y;
                let y = p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x;
                let z = p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w;
                (w * w + x * x + y * y + z * z).sqrt()
            };
            assert!(((p * q).norm() - lhs).abs() < 1e-12);
            assert!(((p * q).norm() - p.norm() * q.norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn associativity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let mut sample = || {
                Quaternion::new(
                    rng.random::<f64>() - 0.5,
                    rng.random::<f64>() - 0.5,
                    rng.random::<f64>() - 0.5,
                    rng.random::<f64>() - 0.5,
                )
            };
            let (p, q, r) = (sample(), sample(), sample());
            assert!((((p * q) * r) - (p * (q * r))).norm() < 1e-13);
        }
    }

    #[test]
    fn reversion_is_anti_automorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let mut sample = || {
                Quaternion::new(
                    rng.random::<f64>() - 0.5,
                    rng.random::<f64>() - 0.5,
                    rng.random::<f64>() - 0.5,
                    rng.random::<f64>() - 0.5,
                )
            };
            let (p, q) = (sample(), sample());
            let lhs = (p * q).reversion();
            let rhs = q.reversion() * p.reversion();
            assert!((lhs - rhs).norm() < 1e-13);
        }
    }
}
