//! Linear algebra of Minkowski 4-space R⁴₁ with signature (−,+,+,+).
//!
//! Points of hyperbolic space H³ have self-pairing −1 and points of de Sitter
//! space S³₁ have self-pairing +1. Everything here is pure and `Copy`.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vector of R⁴₁ in the canonical basis e0..e3.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MinkVec(pub [f64; 4]);

/// Causal character of a non-zero vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalClass {
    Spacelike,
    Lightlike,
    Timelike,
}

/// The two pseudo-spheres the engine works on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quadric {
    /// Hyperbolic 3-space, ⟨x,x⟩ = −1.
    H3,
    /// De Sitter 3-space, ⟨x,x⟩ = +1.
    S31,
}

impl MinkVec {
    pub const ZERO: MinkVec = MinkVec([0.0; 4]);

    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        MinkVec([x0, x1, x2, x3])
    }

    /// Canonical basis vector e_i.
    pub fn basis(i: usize) -> Self {
        let mut v = [0.0; 4];
        v[i] = 1.0;
        MinkVec(v)
    }

    pub fn dot(&self, other: &MinkVec) -> f64 {
        mink_dot(self, other)
    }

    /// Squared pseudo norm ⟨x,x⟩.
    pub fn norm_sq(&self) -> f64 {
        mink_dot(self, self)
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// Euclidean length of the coordinate vector (used for distances only).
    pub fn euclidean_norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    /// Linear combination Σ cᵢ·vᵢ.
    pub fn combine(coeffs: &[f64; 4], basis: &[MinkVec; 4]) -> MinkVec {
        let mut out = MinkVec::ZERO;
        for (c, v) in coeffs.iter().zip(basis) {
            out += *v * *c;
        }
        out
    }
}

impl fmt::Display for MinkVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

impl Index<usize> for MinkVec {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for MinkVec {
    type Output = MinkVec;
    fn add(self, rhs: MinkVec) -> MinkVec {
        MinkVec(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl AddAssign for MinkVec {
    fn add_assign(&mut self, rhs: MinkVec) {
        for i in 0..4 {
            self.0[i] += rhs.0[i];
        }
    }
}

impl Sub for MinkVec {
    type Output = MinkVec;
    fn sub(self, rhs: MinkVec) -> MinkVec {
        MinkVec(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for MinkVec {
    type Output = MinkVec;
    fn neg(self) -> MinkVec {
        MinkVec(self.0.map(|x| -x))
    }
}

impl Mul<f64> for MinkVec {
    type Output = MinkVec;
    fn mul(self, s: f64) -> MinkVec {
        MinkVec(self.0.map(|x| x * s))
    }
}

impl Mul<MinkVec> for f64 {
    type Output = MinkVec;
    fn mul(self, v: MinkVec) -> MinkVec {
        v * self
    }
}

/// Pseudo scalar product −x0·y0 + x1·y1 + x2·y2 + x3·y3.
pub fn mink_dot(x: &MinkVec, y: &MinkVec) -> f64 {
    -x.0[0] * y.0[0] + x.0[1] * y.0[1] + x.0[2] * y.0[2] + x.0[3] * y.0[3]
}

/// Default causal zero tolerance: 1e−12 · max(1, largest component²).
pub fn causal_tolerance(x: &MinkVec) -> f64 {
    1e-12 * x.max_abs().powi(2).max(1.0)
}

/// Causal character with the default relative tolerance.
pub fn causal_character(x: &MinkVec) -> Result<CausalClass> {
    causal_character_with(x, causal_tolerance(x))
}

/// Causal character with an explicit absolute zero tolerance on ⟨x,x⟩.
pub fn causal_character_with(x: &MinkVec, tau: f64) -> Result<CausalClass> {
    if x.0.iter().all(|c| *c == 0.0) {
        return Err(Error::InvalidInput(
            "causal character of the zero vector is undefined".into(),
        ));
    }
    let q = x.norm_sq();
    Ok(if q > tau {
        CausalClass::Spacelike
    } else if q < -tau {
        CausalClass::Timelike
    } else {
        CausalClass::Lightlike
    })
}

/// Triple wedge product x1 ∧ x2 ∧ x3.
///
/// Formal determinant with first row (−e0, e1, e2, e3) and rows x1, x2, x3,
/// expanded along the first row. The result w satisfies
/// ⟨x0, w⟩ = det(x0, x1, x2, x3) for every x0.
pub fn wedge3(x1: &MinkVec, x2: &MinkVec, x3: &MinkVec) -> MinkVec {
    let [a0, a1, a2, a3] = x1.0;
    let [b0, b1, b2, b3] = x2.0;
    let [c0, c1, c2, c3] = x3.0;

    // 3×3 minors of the lower block, deleting column j.
    let m0 = a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1);
    let m1 = a0 * (b2 * c3 - b3 * c2) - a2 * (b0 * c3 - b3 * c0) + a3 * (b0 * c2 - b2 * c0);
    let m2 = a0 * (b1 * c3 - b3 * c1) - a1 * (b0 * c3 - b3 * c0) + a3 * (b0 * c1 - b1 * c0);
    let m3 = a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);

    // Cofactor signs (+,−,+,−) along the first row, and the −e0 entry.
    MinkVec([-m0, -m1, m2, -m3])
}

/// ⟨x,x⟩ + 1 for H³, ⟨x,x⟩ − 1 for S³₁.
pub fn membership_residual(x: &MinkVec, target: Quadric) -> f64 {
    match target {
        Quadric::H3 => x.norm_sq() + 1.0,
        Quadric::S31 => x.norm_sq() - 1.0,
    }
}

/// Determinant of the 4×4 matrix with the given rows.
pub fn det4(rows: &[MinkVec; 4]) -> f64 {
    // ⟨r0, r1∧r2∧r3⟩ is the determinant by construction of the wedge.
    mink_dot(&rows[0], &wedge3(&rows[1], &rows[2], &rows[3]))
}
