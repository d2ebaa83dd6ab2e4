//! Framed curves in H³ built from their curvature quartet.
//!
//! The frame matrix F has rows (γ, v₁, v₂, μ) and solves F′ = C(t)·F. Steps use
//! a fourth-order commutator-free exponential scheme, so F·G·Fᵀ = G holds to
//! rounding and the re-orthonormalization safety net almost never fires.

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frenet::FrenetExprs;
use crate::minkowski::{det4, mink_dot, wedge3, MinkVec};
use crate::symexpr::{diff_expr, parse_expr, Expr};
use crate::tolerances::Tolerances;

/// G = diag(−1, 1, 1, 1).
pub fn metric() -> Matrix4<f64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(-1.0, 1.0, 1.0, 1.0))
}

/// The four curvature functions m, n, a, b.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureQuartet {
    pub m: Expr,
    pub n: Expr,
    pub a: Expr,
    pub b: Expr,
}

impl CurvatureQuartet {
    pub fn new(m: Expr, n: Expr, a: Expr, b: Expr) -> Self {
        CurvatureQuartet { m, n, a, b }
    }

    pub fn parse(m: &str, n: &str, a: &str, b: &str) -> Result<Self> {
        Ok(CurvatureQuartet {
            m: parse_expr(m)?,
            n: parse_expr(n)?,
            a: parse_expr(a)?,
            b: parse_expr(b)?,
        })
    }

    /// Constant quartet.
    pub fn constant(m: f64, n: f64, a: f64, b: f64) -> Self {
        CurvatureQuartet::new(Expr::lit(m), Expr::lit(n), Expr::lit(a), Expr::lit(b))
    }

    /// (m, n, a, b) at t.
    pub fn eval(&self, t: f64) -> Result<[f64; 4]> {
        Ok([self.m.eval(t)?, self.n.eval(t)?, self.a.eval(t)?, self.b.eval(t)?])
    }
}

/// C(t) with rows and columns ordered (γ, v₁, v₂, μ).
pub fn coefficient_matrix(q: &CurvatureQuartet, t: f64) -> Result<Matrix4<f64>> {
    let [m, n, a, b] = q.eval(t)?;
    Ok(generator(m, n, a, b))
}

fn generator(m: f64, n: f64, a: f64, b: f64) -> Matrix4<f64> {
    #[rustfmt::skip]
    let c = Matrix4::new(
        0.0, 0.0, 0.0, m,
        0.0, 0.0, n,   a,
        0.0, -n,  0.0, b,
        m,   -a,  -b,  0.0,
    );
    c
}

/// One frame {γ, v₁, v₂, μ} at parameter t.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameSample {
    pub t: f64,
    pub gamma: MinkVec,
    pub v1: MinkVec,
    pub v2: MinkVec,
    pub mu: MinkVec,
}

impl FrameSample {
    /// The standard frame (e0, e1, e2, e3).
    pub fn standard(t: f64) -> Self {
        FrameSample {
            t,
            gamma: MinkVec::basis(0),
            v1: MinkVec::basis(1),
            v2: MinkVec::basis(2),
            mu: MinkVec::basis(3),
        }
    }

    /// Frame from 16 reals, row-major with rows γ, v₁, v₂, μ.
    pub fn from_row_major(t: f64, x: &[f64; 16]) -> Self {
        let row = |i: usize| MinkVec([x[4 * i], x[4 * i + 1], x[4 * i + 2], x[4 * i + 3]]);
        FrameSample { t, gamma: row(0), v1: row(1), v2: row(2), mu: row(3) }
    }

    pub fn rows(&self) -> [MinkVec; 4] {
        [self.gamma, self.v1, self.v2, self.mu]
    }

    pub fn to_matrix(&self) -> Matrix4<f64> {
        let r = self.rows();
        Matrix4::from_fn(|i, j| r[i].0[j])
    }

    pub fn from_matrix(t: f64, f: &Matrix4<f64>) -> Self {
        let row = |i: usize| MinkVec([f[(i, 0)], f[(i, 1)], f[(i, 2)], f[(i, 3)]]);
        FrameSample { t, gamma: row(0), v1: row(1), v2: row(2), mu: row(3) }
    }

    /// Largest deviation among the ten pseudo-orthonormality pairings.
    pub fn orthonormality_defect(&self) -> f64 {
        let r = self.rows();
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in i..4 {
                let target = match (i, j) {
                    (0, 0) => -1.0,
                    _ if i == j => 1.0,
                    _ => 0.0,
                };
                worst = worst.max((mink_dot(&r[i], &r[j]) - target).abs());
            }
        }
        worst
    }

    /// det(γ, v₁, v₂, μ); +1 for the standard frame.
    pub fn orientation(&self) -> f64 {
        det4(&self.rows())
    }

    /// Componentwise distance between μ and −o·γ∧v₁∧v₂ with o = sign of det(γ, v₁, v₂, μ).
    pub fn wedge_defect(&self, orientation: f64) -> f64 {
        let w = wedge3(&self.gamma, &self.v1, &self.v2) * (-orientation);
        (self.mu - w).max_abs()
    }

    /// Pseudo-Gram–Schmidt: γ first, then v₁, v₂, μ.
    pub fn reorthonormalized(&self) -> Result<FrameSample> {
        let mut basis: Vec<MinkVec> = Vec::with_capacity(4);
        let mut signs: Vec<f64> = Vec::with_capacity(4);
        for (i, v) in self.rows().into_iter().enumerate() {
            let mut w = v;
            for (u, s) in basis.iter().zip(&signs) {
                // ⟨u,u⟩ = s, so the projection coefficient is ⟨w,u⟩/s.
                w = w - *u * (mink_dot(&w, u) * s);
            }
            let q = w.norm_sq();
            let want = if i == 0 { -1.0 } else { 1.0 };
            if !(q * want > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "frame vector {i} has the wrong causal character after projection"
                )));
            }
            basis.push(w * (1.0 / (q * want).sqrt()));
            signs.push(want);
        }
        Ok(FrameSample {
            t: self.t,
            gamma: basis[0],
            v1: basis[1],
            v2: basis[2],
            mu: basis[3],
        })
    }

    /// Checks pairings and the wedge relation against `tol`, relative to the frame scale.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if !self.rows().iter().all(|r| r.is_finite()) {
            return Err(Error::InvalidInput("frame has non-finite entries".into()));
        }
        let scale = self.rows().iter().fold(1.0_f64, |m, r| m.max(r.max_abs()));
        let rel = tol * scale * scale;
        let defect = self.orthonormality_defect();
        if defect > rel {
            return Err(Error::InvalidInput(format!(
                "frame is not pseudo-orthonormal (defect {defect:e})"
            )));
        }
        let o = self.orientation().signum();
        let wd = self.wedge_defect(o);
        if wd > tol * scale.powi(3) {
            return Err(Error::InvalidInput(format!(
                "mu does not match the triple wedge of gamma, v1, v2 (defect {wd:e})"
            )));
        }
        Ok(())
    }
}

/// Drift bookkeeping of one integration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct IntegrationStats {
    pub steps: usize,
    pub step: f64,
    /// Largest |F·G·Fᵀ − G| entry seen before any correction.
    pub max_drift: f64,
    pub worst_t: f64,
    pub corrections: usize,
}

/// Integrated framed curve.
#[derive(Clone, Debug)]
pub struct FramedCurveModel {
    pub quartet: CurvatureQuartet,
    pub t0: f64,
    pub t1: f64,
    pub initial: FrameSample,
    /// One sample per internal step, uniformly spaced, both ends included.
    pub samples: Vec<FrameSample>,
    /// det(γ, v₁, v₂, μ) of the initial frame, ±1.
    pub orientation: f64,
    pub stats: IntegrationStats,
    pub tolerances: Tolerances,
    pub(crate) frenet: FrenetExprs,
}

// Gauss–Legendre nodes and the commutator-free weights.
const SQRT3: f64 = 1.732_050_807_568_877_2;
const C1: f64 = 0.5 - SQRT3 / 6.0;
const C2: f64 = 0.5 + SQRT3 / 6.0;
const ALPHA1: f64 = 0.25 + SQRT3 / 6.0;
const ALPHA2: f64 = 0.25 - SQRT3 / 6.0;

/// One CF4 step of size h from (t, F).
fn cf4_step(q: &CurvatureQuartet, t: f64, h: f64, f: &Matrix4<f64>) -> Result<Matrix4<f64>> {
    let a1 = coefficient_matrix(q, t + C1 * h)?;
    let a2 = coefficient_matrix(q, t + C2 * h)?;
    let early = (a1 * ALPHA1 + a2 * ALPHA2) * h;
    let late = (a1 * ALPHA2 + a2 * ALPHA1) * h;
    Ok(late.exp() * early.exp() * f)
}

fn drift(f: &Matrix4<f64>) -> f64 {
    let g = metric();
    (f * g * f.transpose() - g).amax()
}

/// Integrate F′ = C·F from `initial` over [initial.t, t1] with a uniform step close to `step`.
pub fn integrate_frame(
    q: &CurvatureQuartet,
    t1: f64,
    initial: FrameSample,
    step: f64,
    tol: &Tolerances,
) -> Result<FramedCurveModel> {
    let t0 = initial.t;
    if !(t1 > t0) || !t0.is_finite() || !t1.is_finite() {
        return Err(Error::InvalidInput(format!("empty domain [{t0}, {t1}]")));
    }
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::InvalidInput(format!("step must be positive, got {step}")));
    }
    initial.validate(1e-12)?;
    let orientation = initial.orientation().signum();

    let steps = ((t1 - t0) / step).ceil().max(1.0) as usize;
    let h = (t1 - t0) / steps as f64;
    let mut stats = IntegrationStats { steps, step: h, ..Default::default() };
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(initial);

    let mut f = initial.to_matrix();
    for k in 0..steps {
        let t = t0 + k as f64 * h;
        let t_next = if k + 1 == steps { t1 } else { t0 + (k + 1) as f64 * h };
        f = cf4_step(q, t, t_next - t, &f)?;
        let mut sample = FrameSample::from_matrix(t_next, &f);
        let d = drift(&f);
        if d > stats.max_drift {
            stats.max_drift = d;
            stats.worst_t = t_next;
        }
        if d > tol.frame / 10.0 {
            sample = sample.reorthonormalized().map_err(|_| Error::IntegrationFailure {
                t: t_next,
                drift: d,
            })?;
            stats.corrections += 1;
            f = sample.to_matrix();
            let after = drift(&f);
            if after > tol.frame {
                return Err(Error::IntegrationFailure { t: t_next, drift: after });
            }
        }
        if !f.iter().all(|x| x.is_finite()) {
            return Err(Error::IntegrationFailure { t: t_next, drift: f64::INFINITY });
        }
        samples.push(sample);
    }

    Ok(FramedCurveModel {
        quartet: q.clone(),
        t0,
        t1,
        initial,
        samples,
        orientation,
        stats,
        tolerances: *tol,
        frenet: FrenetExprs::new(q),
    })
}

impl FramedCurveModel {
    /// Frame at an arbitrary t in the domain: one partial step from the sample below t.
    pub fn frame_at(&self, t: f64) -> Result<FrameSample> {
        let slack = 1e-12 * (1.0 + self.t1.abs().max(self.t0.abs()));
        if !(t >= self.t0 - slack && t <= self.t1 + slack) {
            return Err(Error::OutOfDomain { t, t0: self.t0, t1: self.t1 });
        }
        let h = self.stats.step;
        let k = (((t - self.t0) / h).floor().max(0.0) as usize).min(self.samples.len() - 2);
        let base = &self.samples[k];
        let dt = t - base.t;
        if dt == 0.0 {
            return Ok(*base);
        }
        let f = cf4_step(&self.quartet, base.t, dt, &base.to_matrix())?;
        Ok(FrameSample::from_matrix(t, &f))
    }

    /// Uniform output grid of `count` points over the domain.
    pub fn grid(&self, count: usize) -> Vec<f64> {
        linspace(self.t0, self.t1, count)
    }

    pub fn frenet_exprs(&self) -> &FrenetExprs {
        &self.frenet
    }
}

/// `count` evenly spaced values from a to b inclusive.
pub fn linspace(a: f64, b: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![a],
        _ => (0..count)
            .map(|i| {
                if i + 1 == count {
                    b
                } else {
                    a + (b - a) * i as f64 / (count - 1) as f64
                }
            })
            .collect(),
    }
}

/// f, g, h and σ = f² − g² − h² as expressions.
#[derive(Clone, Debug)]
pub struct ScalarInvariants {
    pub f: Expr,
    pub g: Expr,
    pub h: Expr,
    pub sigma: Expr,
}

pub fn scalar_invariants(q: &CurvatureQuartet) -> ScalarInvariants {
    let (m, n, a, b) = (&q.m, &q.n, &q.a, &q.b);
    let (m1, a1, b1) = (diff_expr(m, 1), diff_expr(a, 1), diff_expr(b, 1));
    let a2b2 = &Expr::powi(a, 2) + &Expr::powi(b, 2);
    let f = &(&(a * &b1) - &(&a1 * b)) + &(n * &a2b2);
    let g = &(&(m * &b1) - &(&m1 * b)) + &(&(m * a) * n);
    let h = &(&(m * &a1) - &(&m1 * a)) - &(&(m * b) * n);
    let sigma = &(&Expr::powi(&f, 2) - &Expr::powi(&g, 2)) - &Expr::powi(&h, 2);
    ScalarInvariants { f, g, h, sigma }
}

/// Largest componentwise distance between motion·(γ_A, v₁_A, v₂_A) and (γ_B, v₁_B, v₂_B).
pub fn congruence_residual(
    a: &FramedCurveModel,
    b: &FramedCurveModel,
    motion: &Matrix4<f64>,
) -> Result<f64> {
    let g = metric();
    let lorentz = (motion.transpose() * g * motion - g).amax();
    if lorentz > 1e-10 || (motion.determinant() - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidInput(format!(
            "motion is not in SO(1,3) (defect {lorentz:e})"
        )));
    }
    if a.samples.len() != b.samples.len() {
        return Err(Error::InvalidInput("models are sampled on different grids".into()));
    }
    let apply = |v: &MinkVec| {
        let x = motion * nalgebra::Vector4::from(v.0);
        MinkVec([x[0], x[1], x[2], x[3]])
    };
    let mut worst = 0.0_f64;
    for (sa, sb) in a.samples.iter().zip(&b.samples) {
        if (sa.t - sb.t).abs() > 1e-12 * (1.0 + sa.t.abs()) {
            return Err(Error::InvalidInput("models are sampled on different grids".into()));
        }
        for (x, y) in [(sa.gamma, sb.gamma), (sa.v1, sb.v1), (sa.v2, sb.v2)] {
            worst = worst.max((apply(&x) - y).max_abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(q: &CurvatureQuartet, t1: f64) -> FramedCurveModel {
        integrate_frame(q, t1, FrameSample::standard(0.0), 1e-3, &Tolerances::default()).unwrap()
    }

    #[test]
    fn coefficient_matrix_examples() {
        let c = coefficient_matrix(&CurvatureQuartet::constant(1.0, 0.0, 0.0, 0.0), 0.3).unwrap();
        let mut want = Matrix4::zeros();
        want[(0, 3)] = 1.0;
        want[(3, 0)] = 1.0;
        assert_eq!(c, want);
        let c = coefficient_matrix(&CurvatureQuartet::constant(1.0, 1.0, 2.0, 0.0), 0.0).unwrap();
        #[rustfmt::skip]
        let want = Matrix4::new(
            0.0, 0.0, 0.0, 1.0,
            0.0, 0.0, 1.0, 2.0,
            0.0, -1.0, 0.0, 0.0,
            1.0, -2.0, 0.0, 0.0,
        );
        assert_eq!(c, want);
        let g = metric();
        assert_eq!(c * g + g * c.transpose(), Matrix4::zeros());
    }

    #[test]
    fn geodesic() {
        let m = model(&CurvatureQuartet::constant(1.0, 0.0, 0.0, 0.0), 2.0);
        for s in &m.samples {
            let want = MinkVec::new(s.t.cosh(), 0.0, 0.0, s.t.sinh());
            assert!((s.gamma - want).max_abs() < 1e-8);
            let want_mu = MinkVec::new(s.t.sinh(), 0.0, 0.0, s.t.cosh());
            assert!((s.mu - want_mu).max_abs() < 1e-8);
            assert_eq!(s.v1, MinkVec::basis(1));
        }
    }

    #[test]
    fn zero_generator_keeps_frame() {
        let m = model(&CurvatureQuartet::constant(0.0, 0.0, 0.0, 0.0), 1.0);
        for s in &m.samples {
            assert_eq!(s.rows(), FrameSample::standard(0.0).rows());
        }
    }

    #[test]
    fn invariants_of_constant_quartets() {
        let inv = scalar_invariants(&CurvatureQuartet::constant(1.0, 1.0, 2.0, 0.0));
        let vals: Vec<f64> = [&inv.f, &inv.g, &inv.h, &inv.sigma]
            .iter()
            .map(|e| e.eval(0.7).unwrap())
            .collect();
        assert_eq!(vals, vec![4.0, 2.0, 0.0, 12.0]);
        let inv = scalar_invariants(&CurvatureQuartet::constant(1.0, 0.0, 0.0, 0.0));
        assert_eq!(inv.sigma.eval(0.0).unwrap(), 0.0);
    }

    #[test]
    fn frame_at_hits_samples_and_interpolates() {
        let q = CurvatureQuartet::constant(1.0, 0.0, 0.0, 0.0);
        let m = model(&q, 2.0);
        let s = m.frame_at(m.samples[10].t).unwrap();
        assert_eq!(s, m.samples[10]);
        let t = 1.23456;
        let s = m.frame_at(t).unwrap();
        assert!((s.gamma - MinkVec::new(t.cosh(), 0.0, 0.0, t.sinh())).max_abs() < 1e-12);
        assert!(matches!(m.frame_at(2.5), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn rejects_bad_initial_frame() {
        let mut f = FrameSample::standard(0.0);
        f.v1 = MinkVec::new(0.0, 1.0, 0.1, 0.0);
        let q = CurvatureQuartet::constant(1.0, 0.0, 0.0, 0.0);
        assert!(integrate_frame(&q, 1.0, f, 1e-3, &Tolerances::default()).is_err());
    }

    #[test]
    fn reorthonormalize_repairs_small_errors() {
        let mut f = FrameSample::standard(0.0);
        f.v2 = MinkVec::new(1e-6, 2e-6, 1.0, -1e-6);
        let g = f.reorthonormalized().unwrap();
        assert!(g.orthonormality_defect() < 1e-15);
    }

    #[test]
    fn congruence_examples() {
        let a = model(&CurvatureQuartet::constant(1.0, 1.0, 2.0, 0.0), 1.0);
        let b = model(&CurvatureQuartet::constant(2.0, 1.0, 1.0, 0.0), 1.0);
        let id = Matrix4::identity();
        assert_eq!(congruence_residual(&a, &a, &id).unwrap(), 0.0);
        assert!(congruence_residual(&a, &b, &id).unwrap() > 0.1);
        let mut boost = Matrix4::identity();
        boost[(0, 0)] = 2.0;
        assert!(congruence_residual(&a, &a, &boost).is_err());
    }
}
