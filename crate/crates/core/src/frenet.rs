//! Frenet type frame (γ, n₁, n₂, μ) and the symbolic quantities derived from it.
//!
//! Notation used throughout: M = m, A = √(a²+b²), N = f/(a²+b²),
//! K = MA′ − M′A, R = A² − M² (hyperbolic side) or M² − A² (de Sitter side),
//! D = A·N·√R and σ_F = A²N²(A² − M²) − K².

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framed::{scalar_invariants, CurvatureQuartet, FrameSample, FramedCurveModel};
use crate::minkowski::MinkVec;
use crate::symexpr::{diff_expr, Expr, Func};

/// Which pseudo-sphere a focal surface or evolute lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// A² > M², σ_F > 0.
    Hyperbolic,
    /// M² > A², σ_F < 0.
    DeSitter,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Hyperbolic => "hyperbolic",
            Side::DeSitter => "de Sitter",
        }
    }
}

fn sq(e: &Expr) -> Expr {
    Expr::powi(e, 2)
}

fn sqrt(e: &Expr) -> Expr {
    Expr::func(Func::Sqrt, e)
}

/// Derivative of a field written in the Frenet frame, given the coefficient
/// expressions (c_γ, c_n₁, c_n₂, c_μ).
pub fn frame_derivative_exprs(c: &[Expr; 4], m: &Expr, n: &Expr, a: &Expr) -> [Expr; 4] {
    let d = |e: &Expr| diff_expr(e, 1);
    [
        &d(&c[0]) + &(&c[3] * m),
        &(&d(&c[1]) - &(&c[2] * n)) - &(&c[3] * a),
        &d(&c[2]) + &(&c[1] * n),
        &(&d(&c[3]) + &(&c[0] * m)) + &(&c[1] * a),
    ]
}

/// Symbolic quantities of one side.
#[derive(Clone, Debug)]
pub struct SideExprs {
    pub side: Side,
    /// √R.
    pub root: Expr,
    pub d: Expr,
    pub d1: Expr,
    pub d2: Expr,
    /// θ′ from differentiating the closed-form singular angle. For the de
    /// Sitter side the second entry is the branch used when |D| < |K|.
    pub theta1: [Expr; 2],
    /// ε = θ′ − MN/√R along the focal-surface path, and its derivative.
    pub eps_focal: [Expr; 2],
    pub eps_focal1: [Expr; 2],
    /// ε from the closed quotient (D·K′ − D′·K)/(±σ_F) − MN/√R.
    pub eps_dual: Expr,
    pub eps_dual1: Expr,
    /// Evolute coefficients in the Frenet frame and their first three derivatives.
    pub evolute: [[Expr; 4]; 4],
    /// Unit tangent direction W of the evolute in frame coordinates.
    pub w: [Expr; 4],
    /// ε = ⟨E′, W⟩ along the evolute path, and its derivative.
    pub eps_evolute: Expr,
    pub eps_evolute1: Expr,
}

/// Symbolic Frenet data of a quartet. Side-specific sets are built on demand.
#[derive(Debug)]
pub struct FrenetExprs {
    pub m: Expr,
    pub m1: Expr,
    pub a: Expr,
    pub a1: Expr,
    pub n: Expr,
    pub n1: Expr,
    pub k: Expr,
    pub k1: Expr,
    pub k2: Expr,
    pub sigma_f: Expr,
    hyperbolic: OnceLock<SideExprs>,
    de_sitter: OnceLock<SideExprs>,
}

impl Clone for FrenetExprs {
    fn clone(&self) -> Self {
        FrenetExprs {
            m: self.m.clone(),
            m1: self.m1.clone(),
            a: self.a.clone(),
            a1: self.a1.clone(),
            n: self.n.clone(),
            n1: self.n1.clone(),
            k: self.k.clone(),
            k1: self.k1.clone(),
            k2: self.k2.clone(),
            sigma_f: self.sigma_f.clone(),
            hyperbolic: OnceLock::new(),
            de_sitter: OnceLock::new(),
        }
    }
}

impl FrenetExprs {
    pub fn new(q: &CurvatureQuartet) -> Self {
        let inv = scalar_invariants(q);
        let a2b2 = &sq(&q.a) + &sq(&q.b);
        let m = q.m.clone();
        let a = sqrt(&a2b2);
        let n = &inv.f / &a2b2;
        let m1 = diff_expr(&m, 1);
        let a1 = diff_expr(&a, 1);
        let k = &(&m * &a1) - &(&m1 * &a);
        let k1 = diff_expr(&k, 1);
        let k2 = diff_expr(&k1, 1);
        let sigma_f = &(&(&sq(&a) * &sq(&n)) * &(&sq(&a) - &sq(&m))) - &sq(&k);
        FrenetExprs {
            n1: diff_expr(&n, 1),
            m,
            m1,
            a,
            a1,
            n,
            k,
            k1,
            k2,
            sigma_f,
            hyperbolic: OnceLock::new(),
            de_sitter: OnceLock::new(),
        }
    }

    pub fn side(&self, side: Side) -> &SideExprs {
        match side {
            Side::Hyperbolic => self.hyperbolic.get_or_init(|| self.build(side)),
            Side::DeSitter => self.de_sitter.get_or_init(|| self.build(side)),
        }
    }

    fn build(&self, side: Side) -> SideExprs {
        let (m, a, n, k) = (&self.m, &self.a, &self.n, &self.k);
        let hyp = side == Side::Hyperbolic;
        let r = if hyp { &sq(a) - &sq(m) } else { &sq(m) - &sq(a) };
        let root = sqrt(&r);
        let d = &(a * n) * &root;
        let d1 = diff_expr(&d, 1);
        let d2 = diff_expr(&d1, 1);
        let mn_root = &(m * n) / &root;

        let theta1 = if hyp {
            let th = diff_expr(&Expr::func(Func::Artanh, &(k / &d)), 1);
            [th.clone(), th]
        } else {
            [
                diff_expr(&Expr::func(Func::Atan, &(k / &d)), 1),
                diff_expr(&-Expr::func(Func::Atan, &(&d / k)), 1),
            ]
        };
        let eps_focal = [&theta1[0] - &mn_root, &theta1[1] - &mn_root];
        let eps_focal1 = [diff_expr(&eps_focal[0], 1), diff_expr(&eps_focal[1], 1)];

        // Quotient form, with the denominator spelled as in the criteria.
        let num = &(&d * &self.k1) - &(&d1 * k);
        let an2r = &sq(&(a * n)) * &r;
        let den = if hyp {
            &an2r - &sq(&(&(&self.m1 * a) - &(m * &self.a1)))
        } else {
            &sq(&(&(m * &self.a1) - &(&self.m1 * a))) + &an2r
        };
        let eps_dual = &(&num / &den) - &mn_root;
        let eps_dual1 = diff_expr(&eps_dual, 1);

        let s = if hyp { sqrt(&self.sigma_f) } else { sqrt(&-&self.sigma_f) };
        let c0 = [
            &(&sq(a) * n) / &s,
            -(&(&(m * a) * n) / &s),
            k / &s,
            Expr::lit(0.0),
        ];
        let c1 = frame_derivative_exprs(&c0, m, n, a);
        let c2 = frame_derivative_exprs(&c1, m, n, a);
        let c3 = frame_derivative_exprs(&c2, m, n, a);

        let sh = k / &s;
        let ch = &d / &s;
        let w = if hyp {
            [&(&sh * a) / &root, -(&(&sh * m) / &root), ch, Expr::lit(0.0)]
        } else {
            [-(&(&sh * a) / &root), &(&sh * m) / &root, ch, Expr::lit(0.0)]
        };
        let eps_evolute = &(&(&-(&w[0] * &c1[0]) + &(&w[1] * &c1[1])) + &(&w[2] * &c1[2]))
            + &(&w[3] * &c1[3]);
        let eps_evolute1 = diff_expr(&eps_evolute, 1);

        SideExprs {
            side,
            root,
            d,
            d1,
            d2,
            theta1,
            eps_focal,
            eps_focal1,
            eps_dual,
            eps_dual1,
            evolute: [c0, c1, c2, c3],
            w,
            eps_evolute,
            eps_evolute1,
        }
    }
}

/// D, D′, D″ and √R of one side at a given t.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideValues {
    pub side: Side,
    pub root: f64,
    pub d: f64,
    pub d1: f64,
    pub d2: f64,
}

/// Frenet invariants at one parameter value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrenetData {
    pub t: f64,
    pub m: f64,
    pub n: f64,
    pub a: f64,
    /// Always exactly zero.
    pub b: f64,
    pub m1: f64,
    pub a1: f64,
    pub n1: f64,
    /// K = MA′ − M′A and its first two derivatives.
    pub k: f64,
    pub k1: f64,
    pub k2: f64,
    pub sigma_f: f64,
    /// Present when |A² − M²| exceeds the degeneracy tolerance.
    pub side: Option<SideValues>,
}

impl FrenetData {
    /// A² − M².
    pub fn gap(&self) -> f64 {
        self.a * self.a - self.m * self.m
    }

    /// Scale used to decide the sign of σ_F.
    pub fn sigma_scale(&self) -> f64 {
        1.0 + (self.a * self.a * self.n * self.n * self.gap()).abs() + self.k * self.k
    }

    /// Side values when the requested side is the one defined at this t.
    pub fn side_values(&self, side: Side) -> Option<SideValues> {
        self.side.filter(|s| s.side == side)
    }

    /// Derivative coefficients of a field with Frenet coordinates c and derivative c′.
    pub fn derive(&self, c: &[f64; 4], c1: &[f64; 4]) -> [f64; 4] {
        [
            c1[0] + c[3] * self.m,
            c1[1] - c[2] * self.n - c[3] * self.a,
            c1[2] + c[1] * self.n,
            c1[3] + c[0] * self.m + c[1] * self.a,
        ]
    }
}

/// The Frenet type frame with its symbolic invariants evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrenetFrame {
    pub gamma: MinkVec,
    pub n1: MinkVec,
    pub n2: MinkVec,
    pub mu: MinkVec,
    pub data: FrenetData,
}

impl FrenetFrame {
    pub fn basis(&self) -> [MinkVec; 4] {
        [self.gamma, self.n1, self.n2, self.mu]
    }

    /// Σ cᵢ·(γ, n₁, n₂, μ)ᵢ.
    pub fn point(&self, c: &[f64; 4]) -> MinkVec {
        MinkVec::combine(c, &self.basis())
    }
}

/// Rotated normals (n₁, n₂) and the Frenet invariants at t.
pub fn frenet_convert(model: &FramedCurveModel, t: f64) -> Result<(MinkVec, MinkVec, FrenetData)> {
    let f = frenet_frame(model, t)?;
    Ok((f.n1, f.n2, f.data))
}

/// Frenet frame at t, from the integrated frame at t.
pub fn frenet_frame(model: &FramedCurveModel, t: f64) -> Result<FrenetFrame> {
    let frame = model.frame_at(t)?;
    frenet_frame_from(model, &frame)
}

pub(crate) fn frenet_frame_from(model: &FramedCurveModel, frame: &FrameSample) -> Result<FrenetFrame> {
    let t = frame.t;
    let q = &model.quartet;
    let (a, b) = (q.a.eval(t)?, q.b.eval(t)?);
    let a2b2 = a * a + b * b;
    if a2b2 <= model.tolerances.zero {
        return Err(Error::FrameDegenerate { t, value: a2b2 });
    }
    let len = a2b2.sqrt();
    let n1 = (frame.v1 * a + frame.v2 * b) * (1.0 / len);
    let n2 = (frame.v2 * a - frame.v1 * b) * (1.0 / len);
    let data = frenet_data(model, t)?;
    Ok(FrenetFrame { gamma: frame.gamma, n1, n2, mu: frame.mu, data })
}

/// Frenet invariants at t; needs a² + b² > τ_zero.
pub fn frenet_data(model: &FramedCurveModel, t: f64) -> Result<FrenetData> {
    let ex = model.frenet_exprs();
    let q = &model.quartet;
    let (a, b) = (q.a.eval(t)?, q.b.eval(t)?);
    if a * a + b * b <= model.tolerances.zero {
        return Err(Error::FrameDegenerate { t, value: a * a + b * b });
    }
    let mut data = FrenetData {
        t,
        m: ex.m.eval(t)?,
        n: ex.n.eval(t)?,
        a: ex.a.eval(t)?,
        b: 0.0,
        m1: ex.m1.eval(t)?,
        a1: ex.a1.eval(t)?,
        n1: ex.n1.eval(t)?,
        k: ex.k.eval(t)?,
        k1: ex.k1.eval(t)?,
        k2: ex.k2.eval(t)?,
        sigma_f: 0.0,
        side: None,
    };
    let gap = data.gap();
    data.sigma_f = data.a * data.a * data.n * data.n * gap - data.k * data.k;
    let side = if gap > model.tolerances.zero {
        Some(Side::Hyperbolic)
    } else if gap < -model.tolerances.zero {
        Some(Side::DeSitter)
    } else {
        None
    };
    if let Some(side) = side {
        let s = ex.side(side);
        data.side = Some(SideValues {
            side,
            root: gap.abs().sqrt(),
            d: s.d.eval(t)?,
            d1: s.d1.eval(t)?,
            d2: s.d2.eval(t)?,
        });
    }
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framed::integrate_frame;
    use crate::tolerances::Tolerances;

    fn model(m: f64, n: f64, a: f64, b: f64) -> FramedCurveModel {
        integrate_frame(
            &CurvatureQuartet::constant(m, n, a, b),
            1.0,
            FrameSample::standard(0.0),
            1e-3,
            &Tolerances::default(),
        )
        .unwrap()
    }

    #[test]
    fn constant_quartets() {
        let m = model(1.0, 1.0, 2.0, 0.0);
        let (n1, n2, d) = frenet_convert(&m, 0.5).unwrap();
        let frame = m.frame_at(0.5).unwrap();
        assert_eq!((n1, n2), (frame.v1, frame.v2));
        assert_eq!((d.m, d.n, d.a, d.b), (1.0, 1.0, 2.0, 0.0));
        assert_eq!(d.sigma_f, 12.0);

        let m = model(2.0, 1.0, 1.0, 0.0);
        let (_, _, d) = frenet_convert(&m, 0.5).unwrap();
        assert_eq!((d.m, d.n, d.a, d.b), (2.0, 1.0, 1.0, 0.0));
        assert_eq!(d.sigma_f, -3.0);
        assert_eq!(d.side.unwrap().side, Side::DeSitter);

        let m = model(1.0, 0.0, 0.0, 0.0);
        assert!(matches!(frenet_convert(&m, 0.5), Err(Error::FrameDegenerate { .. })));
    }

    #[test]
    fn rotation_with_nonzero_b() {
        let m = model(0.5, 1.0, 3.0, 4.0);
        let (n1, n2, d) = frenet_convert(&m, 0.2).unwrap();
        assert!((d.a - 5.0).abs() < 1e-15);
        assert!((n1.norm_sq() - 1.0).abs() < 1e-12);
        assert!(n1.dot(&n2).abs() < 1e-12);
        // f = n(a²+b²) for constant a, b, so N = n.
        assert!((d.n - 1.0).abs() < 1e-15);
    }
}
