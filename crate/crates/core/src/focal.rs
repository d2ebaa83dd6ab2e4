//! Hyperbolic and de Sitter focal surfaces, their discriminants λ, singular
//! loci and the classification of singular points.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::framed::{linspace, FramedCurveModel};
use crate::frenet::{frenet_data, frenet_frame, FrenetData, FrenetFrame, Side, SideValues};
use crate::minkowski::MinkVec;
use crate::surface::{
    wrap_angle, Classification, SingularPointRecord, SingularityType, SurfaceParam, SurfaceTag,
};

fn side_of(which: SurfaceTag) -> Side {
    match which {
        SurfaceTag::FocalH | SurfaceTag::DualOfEh => Side::Hyperbolic,
        SurfaceTag::FocalD | SurfaceTag::DualOfEd => Side::DeSitter,
    }
}

fn surface_name(which: SurfaceTag) -> &'static str {
    match which {
        SurfaceTag::FocalH => "hyperbolic focal surface",
        SurfaceTag::FocalD => "de Sitter focal surface",
        SurfaceTag::DualOfEh => "dual surface of the hyperbolic evolute",
        SurfaceTag::DualOfEd => "dual surface of the de Sitter evolute",
    }
}

/// Side values when A² − M² has the sign the surface needs.
pub(crate) fn require_side(which: SurfaceTag, d: &FrenetData) -> Result<SideValues> {
    let side = side_of(which);
    d.side_values(side).ok_or_else(|| Error::SurfaceUndefined {
        surface: surface_name(which),
        t: d.t,
        reason: match side {
            Side::Hyperbolic => format!("A^2 - M^2 = {:e} is not positive", d.gap()),
            Side::DeSitter => format!("M^2 - A^2 = {:e} is not positive", -d.gap()),
        },
    })
}

/// Frenet coordinates of F^h or F^d at θ.
pub fn focal_coeffs(which: SurfaceTag, d: &FrenetData, s: &SideValues, theta: f64) -> [f64; 4] {
    let (c, sn) = match which {
        SurfaceTag::FocalH => (theta.cosh(), theta.sinh()),
        _ => (theta.cos(), theta.sin()),
    };
    [c * d.a / s.root, -c * d.m / s.root, sn, 0.0]
}

pub(crate) fn focal_point_in(
    _model: &FramedCurveModel,
    frame: &FrenetFrame,
    which: SurfaceTag,
    theta: f64,
) -> Result<MinkVec> {
    let s = require_side(which, &frame.data)?;
    Ok(frame.point(&focal_coeffs(which, &frame.data, &s, theta)))
}

/// F^h(t, θ) = coshθ·(Aγ − M n₁)/√(A² − M²) + sinhθ·n₂.
pub fn focal_h_point(model: &FramedCurveModel, t: f64, theta: f64) -> Result<MinkVec> {
    focal_point_in(model, &frenet_frame(model, t)?, SurfaceTag::FocalH, theta)
}

/// F^d(t, θ) = cosθ·(Aγ − M n₁)/√(M² − A²) + sinθ·n₂.
pub fn focal_d_point(model: &FramedCurveModel, t: f64, theta: f64) -> Result<MinkVec> {
    focal_point_in(model, &frenet_frame(model, t)?, SurfaceTag::FocalD, theta)
}

/// λ and its two partial derivatives (λ_t taken where the bracket vanishes).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaParts {
    pub lambda: f64,
    pub lambda_t: f64,
    pub lambda_theta: f64,
}

/// Closed form of λ on F^h / F^d from Frenet values.
pub fn focal_lambda(which: SurfaceTag, d: &FrenetData, s: &SideValues, theta: f64) -> LambdaParts {
    let r = s.root * s.root;
    match which {
        SurfaceTag::FocalH => {
            let (ch, sh) = (theta.cosh(), theta.sinh());
            LambdaParts {
                lambda: (ch * d.k - sh * s.d) / r,
                lambda_t: (ch * d.k1 - sh * s.d1) / r,
                lambda_theta: (sh * d.k - ch * s.d) / r,
            }
        }
        _ => {
            let (c, sn) = (theta.cos(), theta.sin());
            LambdaParts {
                lambda: (c * d.k - sn * s.d) / r,
                lambda_t: (c * d.k1 - sn * s.d1) / r,
                lambda_theta: (-sn * d.k - c * s.d) / r,
            }
        }
    }
}

/// λ^h = [coshθ·K − sinhθ·D^h]/(A² − M²).
pub fn lambda_h(model: &FramedCurveModel, t: f64, theta: f64) -> Result<f64> {
    let d = frenet_data(model, t)?;
    let s = require_side(SurfaceTag::FocalH, &d)?;
    Ok(focal_lambda(SurfaceTag::FocalH, &d, &s, theta).lambda)
}

/// λ^d = [cosθ·K − sinθ·D^d]/(M² − A²).
pub fn lambda_d(model: &FramedCurveModel, t: f64, theta: f64) -> Result<f64> {
    let d = frenet_data(model, t)?;
    let s = require_side(SurfaceTag::FocalD, &d)?;
    Ok(focal_lambda(SurfaceTag::FocalD, &d, &s, theta).lambda)
}

fn mag_k(d: &FrenetData) -> f64 {
    (d.m * d.a1).abs() + (d.m1 * d.a).abs()
}

fn mag_n(d: &FrenetData) -> f64 {
    d.m.abs() + d.a.abs()
}

/// True when the whole fiber over t is singular: K ≈ 0 and D ≈ 0.
fn whole_fiber(model: &FramedCurveModel, d: &FrenetData, s: &SideValues) -> bool {
    let tol = &model.tolerances;
    tol.near_zero(d.k, mag_k(d)) && tol.near_zero(s.d, d.a * s.root)
}

/// σ_F compared against τ_sing with its natural scale; returns +1, −1 or 0.
pub fn sigma_sign(model: &FramedCurveModel, d: &FrenetData) -> i8 {
    let band = model.tolerances.sing * d.sigma_scale();
    if d.sigma_f > band {
        1
    } else if d.sigma_f < -band {
        -1
    } else {
        0
    }
}

fn singular_locus(model: &FramedCurveModel, which: SurfaceTag, ts: &[f64]) -> Result<Vec<SingularPointRecord>> {
    let tol = &model.tolerances;
    let mut out = Vec::new();
    for &t in ts {
        let d = frenet_data(model, t)?;
        let s = require_side(which, &d)?;
        let thetas: Vec<(f64, bool)> = if whole_fiber(model, &d, &s) {
            let n = tol.fiber_samples.max(1);
            let fiber = match which {
                SurfaceTag::FocalH => linspace(-tol.theta_window, tol.theta_window, n),
                _ => (0..n).map(|i| std::f64::consts::TAU * i as f64 / n as f64).collect(),
            };
            fiber.into_iter().map(|th| (th, true)).collect()
        } else {
            match which {
                SurfaceTag::FocalH if sigma_sign(model, &d) > 0 => {
                    vec![((d.k / s.d).atanh(), false)]
                }
                SurfaceTag::FocalH => vec![],
                _ => {
                    let th = wrap_angle(d.k.atan2(s.d));
                    vec![(th, false), (wrap_angle(th + std::f64::consts::PI), false)]
                }
            }
        };
        for (theta, whole) in thetas {
            let parts = focal_lambda(which, &d, &s, theta);
            let mut rec = SingularPointRecord {
                surface: which,
                param: SurfaceParam { t, theta },
                lambda: parts.lambda,
                sigma_f: d.sigma_f,
                kind: SingularityType::DegenerateUnclassified,
                nondegenerate: false,
                whole_fiber: whole,
                diagnostics: BTreeMap::new(),
            };
            let c = classify_at(model, which, &d, &s, theta);
            rec.kind = c.kind;
            rec.nondegenerate = c.nondegenerate;
            rec.diagnostics = c.diagnostics;
            out.push(rec);
        }
    }
    Ok(out)
}

/// Singular points of F^h over the grid `ts`.
///
/// Whole-fiber-singular t produce a sampled θ family; otherwise a record is
/// emitted iff σ_F > 0, at θ = artanh(K/D^h).
pub fn singular_locus_h(model: &FramedCurveModel, ts: &[f64]) -> Result<Vec<SingularPointRecord>> {
    singular_locus(model, SurfaceTag::FocalH, ts)
}

/// Singular points of F^d over the grid `ts`: θ₀ = atan2(K, D^d) and θ₀ + π.
pub fn singular_locus_d(model: &FramedCurveModel, ts: &[f64]) -> Result<Vec<SingularPointRecord>> {
    singular_locus(model, SurfaceTag::FocalD, ts)
}

/// Focal ε = θ′ − MN/√R and its derivative, from the closed-form singular angle.
pub fn focal_epsilon(model: &FramedCurveModel, side: Side, d: &FrenetData, s: &SideValues) -> Result<(f64, f64)> {
    let ex = model.frenet_exprs().side(side);
    let branch = usize::from(side == Side::DeSitter && s.d.abs() < d.k.abs());
    Ok((ex.eps_focal[branch].eval(d.t)?, ex.eps_focal1[branch].eval(d.t)?))
}

fn classify_at(
    model: &FramedCurveModel,
    which: SurfaceTag,
    d: &FrenetData,
    s: &SideValues,
    theta: f64,
) -> Classification {
    let tol = &model.tolerances;
    let mut diag = BTreeMap::new();
    let parts = focal_lambda(which, d, s, theta);
    let r = s.root * s.root;
    diag.insert("K".to_string(), d.k);
    diag.insert("N".to_string(), d.n);
    diag.insert("D".to_string(), s.d);
    diag.insert("lambda_t".to_string(), parts.lambda_t);
    diag.insert("lambda_theta".to_string(), parts.lambda_theta);
    let lam_mag = (d.k.abs() + d.k1.abs() + s.d.abs() + s.d1.abs()) / r;
    let nondegenerate = !(tol.near_zero(parts.lambda_t, lam_mag)
        && tol.near_zero(parts.lambda_theta, lam_mag));

    let hyp = which == SurfaceTag::FocalH;
    let mn = d.m * d.n;
    let branch_a = !(tol.near_zero(d.k, mag_k(d)) && tol.near_zero(d.n, mag_n(d)));
    let kind = if branch_a {
        diag.insert("branch_a".to_string(), 1.0);
        match focal_epsilon(model, side_of(which), d, s) {
            Ok((eps, eps1)) => {
                let mag = (mn / s.root).abs();
                diag.insert("eps".to_string(), eps);
                diag.insert("eps_prime".to_string(), eps1);
                if !tol.near_zero(eps, mag) {
                    SingularityType::CuspidalEdge
                } else if !tol.near_zero(eps1, mag) {
                    SingularityType::Swallowtail
                } else {
                    SingularityType::DegenerateUnclassified
                }
            }
            Err(_) => {
                diag.insert("eps_undefined".to_string(), 1.0);
                SingularityType::DegenerateUnclassified
            }
        }
    } else {
        diag.insert("branch_a".to_string(), 0.0);
        let (q1, q2, q3) = if hyp {
            let (ch, sh) = (theta.cosh(), theta.sinh());
            let q1 = ch * d.k1 - sh * s.d1;
            let q2 = sh * d.k1 - ch * s.d1;
            let q3 = (ch * d.k2 - sh * s.d2) * s.root + 2.0 * mn * q2;
            (q1, q2, q3)
        } else {
            let (c, sn) = (theta.cos(), theta.sin());
            let q1 = c * d.k1 - sn * s.d1;
            let q2 = sn * d.k1 + c * s.d1;
            let q3 = (c * d.k2 - sn * s.d2) * s.root - 2.0 * mn * q2;
            (q1, q2, q3)
        };
        diag.insert("q1".to_string(), q1);
        diag.insert("q2".to_string(), q2);
        diag.insert("q3".to_string(), q3);
        let mag1 = d.k1.abs() + s.d1.abs();
        let mag3 = (d.k2.abs() + s.d2.abs()) * s.root + 2.0 * mn.abs() * mag1;
        if !tol.near_zero(q1, mag1) {
            SingularityType::CuspidalEdge
        } else if !tol.near_zero(q2, mag1) && !tol.near_zero(q3, mag3) {
            SingularityType::CuspidalBeaks
        } else {
            SingularityType::DegenerateUnclassified
        }
    };
    Classification { kind, nondegenerate, diagnostics: diag }
}

fn classify(model: &FramedCurveModel, which: SurfaceTag, record: &SingularPointRecord) -> Result<Classification> {
    let d = frenet_data(model, record.param.t)?;
    let s = require_side(which, &d)?;
    Ok(classify_at(model, which, &d, &s, record.param.theta))
}

/// Type of a singular point of F^h; never a cuspidal cross cap.
pub fn classify_h(model: &FramedCurveModel, record: &SingularPointRecord) -> Result<Classification> {
    classify(model, SurfaceTag::FocalH, record)
}

/// Type of a singular point of F^d; never a cuspidal cross cap or lips.
pub fn classify_d(model: &FramedCurveModel, record: &SingularPointRecord) -> Result<Classification> {
    classify(model, SurfaceTag::FocalD, record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framed::{integrate_frame, CurvatureQuartet, FrameSample};
    use crate::minkowski::{membership_residual, Quadric};
    use crate::tolerances::Tolerances;

    fn model(m: f64, n: f64, a: f64, b: f64) -> FramedCurveModel {
        integrate_frame(
            &CurvatureQuartet::constant(m, n, a, b),
            2.0,
            FrameSample::standard(0.0),
            1e-3,
            &Tolerances::default(),
        )
        .unwrap()
    }

    #[test]
    fn focal_h_examples() {
        let m = model(1.0, 1.0, 2.0, 0.0);
        let t = 0.7;
        let p = focal_h_point(&m, t, 0.0).unwrap();
        let fr = m.frame_at(t).unwrap();
        let want = (fr.gamma * 2.0 - fr.v1) * (1.0 / 3f64.sqrt());
        assert!((p - want).max_abs() < 1e-14);
        assert!(membership_residual(&p, Quadric::H3).abs() < 1e-9);
        assert!(p.dot(&fr.mu).abs() < 1e-12);
        let err = focal_h_point(&model(2.0, 1.0, 1.0, 0.0), t, 0.0);
        assert!(matches!(err, Err(Error::SurfaceUndefined { .. })));
    }

    #[test]
    fn focal_d_examples() {
        let m = model(2.0, 1.0, 1.0, 0.0);
        let t = 1.1;
        let fr = m.frame_at(t).unwrap();
        let p = focal_d_point(&m, t, 0.0).unwrap();
        let want = (fr.gamma - fr.v1 * 2.0) * (1.0 / 3f64.sqrt());
        assert!((p - want).max_abs() < 1e-14);
        assert!(membership_residual(&p, Quadric::S31).abs() < 1e-9);
        let p = focal_d_point(&m, t, std::f64::consts::FRAC_PI_2).unwrap();
        assert!((p - fr.v2).max_abs() < 1e-15);
        assert!(focal_d_point(&model(1.0, 1.0, 2.0, 0.0), t, 0.0).is_err());
    }

    #[test]
    fn lambda_examples() {
        let m = model(1.0, 1.0, 2.0, 0.0);
        for th in [-1.0, 0.0, 0.5] {
            let want = -(2.0 * 3f64.sqrt() / 3.0) * f64::sinh(th);
            assert!((lambda_h(&m, 0.3, th).unwrap() - want).abs() < 1e-14);
        }
        let m = model(2.0, 1.0, 1.0, 0.0);
        for th in [0.0, 1.0, std::f64::consts::PI] {
            let want = -(3f64.sqrt() / 3.0) * th.sin();
            assert!((lambda_d(&m, 0.3, th).unwrap() - want).abs() < 1e-14);
        }
    }

    #[test]
    fn loci_and_types_of_constant_quartets() {
        let m = model(1.0, 1.0, 2.0, 0.0);
        let recs = singular_locus_h(&m, &[0.0, 0.5, 1.0]).unwrap();
        assert_eq!(recs.len(), 3);
        for r in &recs {
            assert_eq!(r.param.theta, 0.0);
            assert_eq!(r.kind, SingularityType::CuspidalEdge);
            assert!(r.nondegenerate);
        }
        let m = model(2.0, 1.0, 1.0, 0.0);
        let recs = singular_locus_d(&m, &[0.5]).unwrap();
        let thetas: Vec<f64> = recs.iter().map(|r| r.param.theta).collect();
        assert_eq!(thetas, vec![0.0, std::f64::consts::PI]);
        assert!(recs.iter().all(|r| r.kind == SingularityType::CuspidalEdge));
        assert!(singular_locus_h(&m, &[0.5]).is_err());
    }
}
