//! Octonions by Cayley–Dickson doubling of the quaternions.
//!
//! An octonion is a pair of quaternions `(a, b)`, coordinates `0..4` holding
//! `a` and `4..8` holding `b`, with
//!
//! ```text
//! (a, b)(c, d) = (ac − d̄b, da + bc̄)
//! ```
//!
//! and Hamilton's quaternion product on each half. Coordinate 0 is the real
//! unit `e0`. The resulting structure constants `e_i e_j = ±e_k` are frozen
//! by a fixture in the test suite.

mod octavian;

pub use octavian::{build_octavian_units, octavian_factor_by_centre, OctavianLoop};

use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::loops::LoopError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OctonionError {
    #[error("coordinate {0} exceeds the exact integer budget")]
    Overflow(i128),
    #[error("product is not half-integral")]
    NotHalfIntegral,
    #[error("no seed yields a 240-element closed system of units")]
    ClosureNotFound,
    #[error(transparent)]
    Loop(#[from] LoopError),
}

fn quat_mul<T>(p: [T; 4], q: [T; 4]) -> [T; 4]
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    [
        p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
        p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
        p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
        p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
    ]
}

fn quat_conj<T: Copy + Neg<Output = T>>(p: [T; 4]) -> [T; 4] {
    [p[0], -p[1], -p[2], -p[3]]
}

fn halves<T: Copy>(x: &[T; 8]) -> ([T; 4], [T; 4]) {
    ([x[0], x[1], x[2], x[3]], [x[4], x[5], x[6], x[7]])
}

/// Cayley–Dickson product on raw coordinates.
pub fn cd_mul<T>(x: &[T; 8], y: &[T; 8]) -> [T; 8]
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    let (a, b) = halves(x);
    let (c, d) = halves(y);
    let ac = quat_mul(a, c);
    let db = quat_mul(quat_conj(d), b);
    let da = quat_mul(d, a);
    let bc = quat_mul(b, quat_conj(c));
    [
        ac[0] - db[0],
        ac[1] - db[1],
        ac[2] - db[2],
        ac[3] - db[3],
        da[0] + bc[0],
        da[1] + bc[1],
        da[2] + bc[2],
        da[3] + bc[3],
    ]
}

/// Floating-point octonion.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct OctonionF(pub [f64; 8]);

impl OctonionF {
    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; 8];
        c[i] = 1.0;
        OctonionF(c)
    }

    pub fn conj(&self) -> Self {
        let mut c = self.0.map(|v| -v);
        c[0] = self.0[0];
        OctonionF(c)
    }

    pub fn norm2(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm2().sqrt()
    }

    /// Uniform sample from the unit 7-sphere.
    pub fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let mut c = [0.0; 8];
            for v in c.iter_mut() {
                *v = rng.sample(StandardNormal);
            }
            let o = OctonionF(c);
            let n = o.norm();
            if n > 1e-9 {
                return OctonionF(c.map(|v| v / n));
            }
        }
    }
}

impl Mul for OctonionF {
    type Output = OctonionF;
    fn mul(self, rhs: OctonionF) -> OctonionF {
        OctonionF(cd_mul(&self.0, &rhs.0))
    }
}

impl Sub for OctonionF {
    type Output = OctonionF;
    fn sub(self, rhs: OctonionF) -> OctonionF {
        OctonionF(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

/// `‖(x·y)·(z·x) − (x·(y·z))·x‖`
pub fn moufang_residual(x: OctonionF, y: OctonionF, z: OctonionF) -> f64 {
    ((x * y) * (z * x) - (x * (y * z)) * x).norm()
}

/// `‖(x·y)·z − x·(y·z)‖`
pub fn associator_norm(x: OctonionF, y: OctonionF, z: OctonionF) -> f64 {
    ((x * y) * z - x * (y * z)).norm()
}

/// Exact octonion with half-integral coordinates, stored doubled:
/// coordinate `i` has value `self.0[i] / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OctonionH(pub [i32; 8]);

impl OctonionH {
    pub const ONE: OctonionH = OctonionH([2, 0, 0, 0, 0, 0, 0, 0]);

    /// `±e_i`
    pub fn unit(i: usize, negative: bool) -> Self {
        let mut c = [0; 8];
        c[i] = if negative { -2 } else { 2 };
        OctonionH(c)
    }

    /// Exact product. The doubled factors multiply to 4× the product, which
    /// must be divisible by 2 to stay half-integral.
    pub fn mul(&self, other: &OctonionH) -> Result<OctonionH, OctonionError> {
        let x = self.0.map(i128::from);
        let y = other.0.map(i128::from);
        let scaled = cd_mul(&x, &y);
        let mut out = [0i32; 8];
        for (o, v) in out.iter_mut().zip(scaled) {
            if v % 2 != 0 {
                return Err(OctonionError::NotHalfIntegral);
            }
            *o = i32::try_from(v / 2).map_err(|_| OctonionError::Overflow(v / 2))?;
        }
        Ok(OctonionH(out))
    }

    pub fn conj(&self) -> Self {
        let mut c = self.0.map(|v| -v);
        c[0] = self.0[0];
        OctonionH(c)
    }

    /// Norm scaled by 4 (sum of squared doubled coordinates).
    pub fn norm2_scaled(&self) -> i64 {
        self.0.iter().map(|&v| i64::from(v) * i64::from(v)).sum()
    }

    pub fn to_float(&self) -> OctonionF {
        OctonionF(self.0.map(|v| f64::from(v) / 2.0))
    }
}

/// Maximum errors over seeded random unit samples.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatChecks {
    pub samples: usize,
    pub max_moufang_residual: f64,
    pub max_norm_error: f64,
    pub max_alternative_residual: f64,
}

/// Samples `samples` unit triples from a ChaCha stream seeded with `seed`.
pub fn float_checks(samples: usize, seed: u64) -> FloatChecks {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = FloatChecks {
        samples,
        max_moufang_residual: 0.0,
        max_norm_error: 0.0,
        max_alternative_residual: 0.0,
    };
    for _ in 0..samples {
        let x = OctonionF::random_unit(&mut rng);
        let y = OctonionF::random_unit(&mut rng);
        let z = OctonionF::random_unit(&mut rng);
        out.max_moufang_residual = out.max_moufang_residual.max(moufang_residual(x, y, z));
        let (nx, ny) = (x.norm2(), y.norm2());
        let err = ((x * y).norm2() - nx * ny).abs() / nx.max(ny).max(nx * ny).max(1.0);
        out.max_norm_error = out.max_norm_error.max(err);
        let left = (x * (x * y) - (x * x) * y).norm();
        let right = ((y * x) * x - y * (x * x)).norm();
        out.max_alternative_residual = out.max_alternative_residual.max(left).max(right);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_and_imaginary_squares() {
        let x = OctonionF([0.3, -1.0, 2.0, 0.5, 0.0, 4.0, -2.5, 1.0]);
        assert_eq!(OctonionF::basis(0) * x, x);
        assert_eq!(x * OctonionF::basis(0), x);
        for i in 1..8 {
            let e = OctonionF::basis(i);
            assert_eq!(e * e, OctonionF([-1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]));
        }
    }

    #[test]
    fn imaginary_units_anticommute() {
        for i in 1..8 {
            for j in 1..8 {
                if i == j {
                    continue;
                }
                let (a, b) = (OctonionF::basis(i), OctonionF::basis(j));
                let ab = a * b;
                let ba = b * a;
                assert_eq!(ab.0.map(|v| -v), ba.0);
                assert_eq!(ab.0.iter().filter(|v| **v != 0.0).count(), 1);
            }
        }
    }

    #[test]
    fn conjugate_and_norm() {
        let x = OctonionF([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        assert_eq!(x.conj().0, [1.0, -2.0, -3.0, -4.0, -5.0, -6.0, -7.0, -8.0]);
        assert_eq!(x.norm2(), 204.0);
        let xx = x * x.conj();
        assert_eq!(xx.0[0], 204.0);
        assert!(xx.0[1..].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn nonassociative_witness() {
        let (e1, e2, e4) = (OctonionF::basis(1), OctonionF::basis(2), OctonionF::basis(4));
        assert!(associator_norm(e1, e2, e4) > 1.0);
        assert_eq!(moufang_residual(e1, e2, e4), 0.0);
        assert_eq!(moufang_residual(e1, e2, OctonionF::basis(0)), 0.0);
    }

    #[test]
    fn exact_arithmetic() {
        let h = OctonionH([1, 1, 1, 1, 0, 0, 0, 0]);
        let sq = h.mul(&h).unwrap();
        assert_eq!(sq, OctonionH([-1, 1, 1, 1, 0, 0, 0, 0]));
        assert_eq!(h.mul(&h.conj()).unwrap(), OctonionH::ONE);
        assert_eq!(OctonionH::ONE.mul(&h).unwrap(), h);
        let odd = OctonionH([1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(odd.mul(&h), Err(OctonionError::NotHalfIntegral));
        let big = OctonionH([1 << 30, 0, 0, 0, 0, 0, 0, 0]);
        assert!(matches!(big.mul(&big), Err(OctonionError::Overflow(_))));
    }

    #[test]
    fn float_checks_are_deterministic() {
        let a = float_checks(200, 7);
        let b = float_checks(200, 7);
        assert_eq!(a, b);
        assert!(a.max_moufang_residual < 1e-12);
        assert!(a.max_norm_error < 1e-12);
        assert!(a.max_alternative_residual < 1e-12);
        assert_eq!(float_checks(0, 1).max_moufang_residual, 0.0);
    }
}
