//! Hyperbolic and de Sitter evolutes, the dual surfaces of the evolutes, and
//! the correspondence between their singularities and those of the focal
//! surfaces.

use std::collections::BTreeMap;

use nalgebra::Matrix4x2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::focal::{focal_coeffs, focal_epsilon, require_side, sigma_sign, singular_locus_h, singular_locus_d};
use crate::framed::FramedCurveModel;
use crate::frenet::{frenet_data, frenet_frame, FrenetData, FrenetFrame, Side, SideValues};
use crate::minkowski::MinkVec;
use crate::surface::{
    Classification, DualSurfaceRecord, SingularPointRecord, SingularityType, SurfaceParam, SurfaceTag,
};

/// Local type of an evolute point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EvolutePointType {
    RegularPoint,
    Cusp234,
    DegenerateUnclassified,
}

/// Evolute point with its first three derivatives and the ε decision values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvoluteSample {
    pub side: Side,
    pub t: f64,
    pub point: MinkVec,
    pub derivatives: [MinkVec; 3],
    pub point_type: EvolutePointType,
    pub epsilon: f64,
    pub epsilon_prime: f64,
    pub diagnostics: BTreeMap<String, f64>,
}

fn evolute_name(side: Side) -> &'static str {
    match side {
        Side::Hyperbolic => "hyperbolic",
        Side::DeSitter => "de Sitter",
    }
}

/// Checks that σ_F has the sign the side needs and that the side is defined.
fn require_evolute(model: &FramedCurveModel, side: Side, d: &FrenetData) -> Result<SideValues> {
    let want = if side == Side::Hyperbolic { 1 } else { -1 };
    let undefined = Error::EvoluteUndefined { which: evolute_name(side), t: d.t, sigma_f: d.sigma_f };
    if sigma_sign(model, d) != want {
        return Err(undefined);
    }
    d.side_values(side).ok_or(undefined)
}

/// Frenet coordinates of the evolute point, [A²N, −MAN, K, 0]/√(±σ_F).
pub fn evolute_coeffs(d: &FrenetData, side: Side) -> [f64; 4] {
    let s = match side {
        Side::Hyperbolic => d.sigma_f.sqrt(),
        Side::DeSitter => (-d.sigma_f).sqrt(),
    };
    [d.a * d.a * d.n / s, -d.m * d.a * d.n / s, d.k / s, 0.0]
}

fn eps_mag(d: &FrenetData, s: &SideValues) -> f64 {
    (d.m * d.n / s.root).abs()
}

fn evolute(model: &FramedCurveModel, side: Side, t: f64) -> Result<EvoluteSample> {
    let frame = frenet_frame(model, t)?;
    let d = frame.data;
    let s = require_evolute(model, side, &d)?;
    let ex = model.frenet_exprs().side(side);
    let mut coeffs = [[0.0; 4]; 4];
    for (k, row) in ex.evolute.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            coeffs[k][j] = e.eval(t)?;
        }
    }
    let point = frame.point(&coeffs[0]);
    let derivatives = [frame.point(&coeffs[1]), frame.point(&coeffs[2]), frame.point(&coeffs[3])];
    let epsilon = ex.eps_evolute.eval(t)?;
    let epsilon_prime = ex.eps_evolute1.eval(t)?;

    let tol = &model.tolerances;
    let mag = eps_mag(&d, &s);
    let point_type = if !tol.near_zero(epsilon, mag) {
        EvolutePointType::RegularPoint
    } else if !tol.near_zero(epsilon_prime, mag) {
        EvolutePointType::Cusp234
    } else {
        EvolutePointType::DegenerateUnclassified
    };

    // Audit only: singular values of the pair (E″, E‴).
    let pair = Matrix4x2::from_fn(|i, j| derivatives[j + 1].0[i]);
    let sv = pair.singular_values();
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("e23_smax".to_string(), sv.max());
    diagnostics.insert("e23_smin".to_string(), sv.min());
    diagnostics.insert("sigma_F".to_string(), d.sigma_f);
    Ok(EvoluteSample { side, t, point, derivatives, point_type, epsilon, epsilon_prime, diagnostics })
}

/// E^h = (A²N γ − MAN n₁ + K n₂)/√σ_F, defined where σ_F > 0.
pub fn evolute_h(model: &FramedCurveModel, t: f64) -> Result<EvoluteSample> {
    evolute(model, Side::Hyperbolic, t)
}

/// E^d = (A²N γ − MAN n₁ + K n₂)/√(−σ_F), defined where σ_F < 0 and M² > A².
pub fn evolute_d(model: &FramedCurveModel, t: f64) -> Result<EvoluteSample> {
    evolute(model, Side::DeSitter, t)
}

fn dual_tag_side(which: SurfaceTag) -> Side {
    match which {
        SurfaceTag::DualOfEd | SurfaceTag::FocalD => Side::DeSitter,
        _ => Side::Hyperbolic,
    }
}

pub(crate) fn require_dual(model: &FramedCurveModel, which: SurfaceTag, d: &FrenetData) -> Result<SideValues> {
    let side = dual_tag_side(which);
    require_evolute(model, side, d).map_err(|_| Error::SurfaceUndefined {
        surface: match side {
            Side::Hyperbolic => "dual surface of the hyperbolic evolute",
            Side::DeSitter => "dual surface of the de Sitter evolute",
        },
        t: d.t,
        reason: format!("sigma_F = {:e}, A^2 - M^2 = {:e}", d.sigma_f, d.gap()),
    })
}

/// Frenet coordinates of the dual surfaces at θ.
pub fn dual_coeffs(which: SurfaceTag, d: &FrenetData, s: &SideValues, theta: f64) -> [f64; 4] {
    let (c, sn) = match which {
        SurfaceTag::DualOfEd => (theta.cosh(), theta.sinh()),
        _ => (theta.cos(), theta.sin()),
    };
    [-sn * d.m / s.root, sn * d.a / s.root, 0.0, c]
}

pub(crate) fn dual_point_in(
    model: &FramedCurveModel,
    frame: &FrenetFrame,
    which: SurfaceTag,
    theta: f64,
) -> Result<MinkVec> {
    let s = require_dual(model, which, &frame.data)?;
    Ok(frame.point(&dual_coeffs(which, &frame.data, &s, theta)))
}

/// cosθ·μ + sinθ·(−Mγ + A n₁)/√(A² − M²).
pub fn dual_of_evolute_h(model: &FramedCurveModel, t: f64, theta: f64) -> Result<MinkVec> {
    dual_point_in(model, &frenet_frame(model, t)?, SurfaceTag::DualOfEh, theta)
}

/// coshθ·μ + sinhθ·(−Mγ + A n₁)/√(M² − A²).
pub fn dual_of_evolute_d(model: &FramedCurveModel, t: f64, theta: f64) -> Result<MinkVec> {
    dual_point_in(model, &frenet_frame(model, t)?, SurfaceTag::DualOfEd, theta)
}

/// λ on a dual surface and its θ-derivative.
pub fn dual_lambda(which: SurfaceTag, d: &FrenetData, s: &SideValues, theta: f64) -> (f64, f64) {
    let r = s.root * s.root;
    match which {
        SurfaceTag::DualOfEd => {
            let q = (-d.sigma_f).sqrt() / r;
            (-theta.sinh() * q, -theta.cosh() * q)
        }
        _ => {
            let q = d.sigma_f.sqrt() / r;
            (-theta.sin() * q, -theta.cos() * q)
        }
    }
}

/// −sinθ·√σ_F/(A² − M²).
pub fn lambda_dual_h(model: &FramedCurveModel, t: f64, theta: f64) -> Result<f64> {
    let d = frenet_data(model, t)?;
    let s = require_dual(model, SurfaceTag::DualOfEh, &d)?;
    Ok(dual_lambda(SurfaceTag::DualOfEh, &d, &s, theta).0)
}

/// −sinhθ·√(−σ_F)/(M² − A²).
pub fn lambda_dual_d(model: &FramedCurveModel, t: f64, theta: f64) -> Result<f64> {
    let d = frenet_data(model, t)?;
    let s = require_dual(model, SurfaceTag::DualOfEd, &d)?;
    Ok(dual_lambda(SurfaceTag::DualOfEd, &d, &s, theta).0)
}

/// ε from the closed quotient form and its derivative.
pub fn dual_epsilon(model: &FramedCurveModel, side: Side, t: f64) -> Result<(f64, f64)> {
    let ex = model.frenet_exprs().side(side);
    Ok((ex.eps_dual.eval(t)?, ex.eps_dual1.eval(t)?))
}

fn classify_dual_at(
    model: &FramedCurveModel,
    which: SurfaceTag,
    d: &FrenetData,
    s: &SideValues,
    theta: f64,
) -> Result<Classification> {
    let tol = &model.tolerances;
    let (eps, eps1) = dual_epsilon(model, dual_tag_side(which), d.t)?;
    let (_, lambda_theta) = dual_lambda(which, d, s, theta);
    let mag = eps_mag(d, s);
    let kind = if !tol.near_zero(eps, mag) {
        SingularityType::CuspidalEdge
    } else if !tol.near_zero(eps1, mag) {
        SingularityType::CuspidalCrossCap
    } else {
        SingularityType::DegenerateUnclassified
    };
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("eps".to_string(), eps);
    diagnostics.insert("eps_prime".to_string(), eps1);
    diagnostics.insert("lambda_theta".to_string(), lambda_theta);
    Ok(Classification {
        kind,
        nondegenerate: !tol.near_zero(lambda_theta, 0.0),
        diagnostics,
    })
}

fn classify_dual(model: &FramedCurveModel, which: SurfaceTag, t0: f64, thetas: &[f64]) -> Result<Vec<DualSurfaceRecord>> {
    let d = frenet_data(model, t0)?;
    let s = require_dual(model, which, &d).map_err(|_| Error::EvoluteUndefined {
        which: evolute_name(dual_tag_side(which)),
        t: t0,
        sigma_f: d.sigma_f,
    })?;
    let mut out = Vec::with_capacity(thetas.len());
    for &theta in thetas {
        let c = classify_dual_at(model, which, &d, &s, theta)?;
        out.push(SingularPointRecord {
            surface: which,
            param: SurfaceParam { t: t0, theta },
            lambda: dual_lambda(which, &d, &s, theta).0,
            sigma_f: d.sigma_f,
            kind: c.kind,
            nondegenerate: c.nondegenerate,
            whole_fiber: false,
            diagnostics: c.diagnostics,
        });
    }
    Ok(out)
}

/// Records at (t₀, 0) and (t₀, π) of the dual surface of E^h.
pub fn classify_dual_h(model: &FramedCurveModel, t0: f64) -> Result<Vec<DualSurfaceRecord>> {
    classify_dual(model, SurfaceTag::DualOfEh, t0, &[0.0, std::f64::consts::PI])
}

/// Record at (t₀, 0) of the dual surface of E^d.
pub fn classify_dual_d(model: &FramedCurveModel, t0: f64) -> Result<Vec<DualSurfaceRecord>> {
    classify_dual(model, SurfaceTag::DualOfEd, t0, &[0.0])
}

/// One checked parameter value of a correspondence leg.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrespondenceEntry {
    pub t: f64,
    pub theta: f64,
    /// min(‖F(ξ(t)) − E(t)‖, ‖F(ξ(t)) + E(t)‖) in coordinates.
    pub distance: f64,
    /// The focal point matched −E (happens when N < 0).
    pub antipodal: bool,
    /// The t is a located root of ε.
    pub refined_root: bool,
    pub focal_type: SingularityType,
    pub evolute_type: EvolutePointType,
    pub dual_type: SingularityType,
    pub eps_focal: f64,
    pub eps_dual: f64,
    pub eps_evolute: f64,
    pub agreements: BTreeMap<String, bool>,
}

/// Outcome of one leg (hyperbolic or de Sitter).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrespondenceLeg {
    pub side: Side,
    /// Reason the leg could not be evaluated anywhere.
    pub skipped: Option<String>,
    pub entries: Vec<CorrespondenceEntry>,
    pub max_distance: f64,
    pub all_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrespondenceReport {
    pub hyperbolic: CorrespondenceLeg,
    pub de_sitter: CorrespondenceLeg,
}

impl CorrespondenceReport {
    pub fn legs(&self) -> [&CorrespondenceLeg; 2] {
        [&self.hyperbolic, &self.de_sitter]
    }
}

/// Compare focal surfaces, evolutes and dual surfaces on the grid `ts`, plus
/// every refined root of ε found between neighbouring grid points.
pub fn correspondence_check(model: &FramedCurveModel, ts: &[f64]) -> CorrespondenceReport {
    CorrespondenceReport {
        hyperbolic: leg(model, Side::Hyperbolic, ts),
        de_sitter: leg(model, Side::DeSitter, ts),
    }
}

/// Focal ε at t where the evolute of `side` is defined.
fn focal_eps_at(model: &FramedCurveModel, side: Side, t: f64) -> Option<f64> {
    let d = frenet_data(model, t).ok()?;
    let s = require_evolute(model, side, &d).ok()?;
    focal_epsilon(model, side, &d, &s).ok().map(|e| e.0)
}

/// Roots of ε on the grid: exact zeros at grid points, plus sign changes
/// between consecutive defined grid points refined by Brent's method.
pub fn epsilon_roots(model: &FramedCurveModel, side: Side, ts: &[f64]) -> Vec<f64> {
    let vals: Vec<Option<f64>> = ts.iter().map(|&t| focal_eps_at(model, side, t)).collect();
    let mut roots: Vec<f64> = ts.iter().zip(&vals).filter(|(_, v)| **v == Some(0.0)).map(|(t, _)| *t).collect();
    for i in 1..ts.len() {
        let (Some(e0), Some(e1)) = (vals[i - 1], vals[i]) else { continue };
        if e0 == 0.0 || e1 == 0.0 || e0.signum() == e1.signum() {
            continue;
        }
        let f = |t: f64| focal_eps_at(model, side, t).unwrap_or(f64::NAN);
        let mut conv = roots::SimpleConvergency { eps: 1e-15, max_iter: 200 };
        if let Ok(r) = roots::find_root_brent(ts[i - 1], ts[i], f, &mut conv) {
            if r.is_finite() {
                roots.push(r);
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

fn leg(model: &FramedCurveModel, side: Side, ts: &[f64]) -> CorrespondenceLeg {
    let mut points: Vec<(f64, bool)> = ts.iter().map(|&t| (t, false)).collect();
    for r in epsilon_roots(model, side, ts) {
        match points.iter_mut().find(|p| (p.0 - r).abs() <= 1e-12 * (1.0 + r.abs())) {
            Some(p) => p.1 = true,
            None => points.push((r, true)),
        }
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut entries = Vec::new();
    let mut reasons: BTreeMap<String, usize> = BTreeMap::new();
    for (t, refined) in points {
        match entry(model, side, t, refined) {
            Ok(Some(e)) => entries.push(e),
            Ok(None) => {}
            Err(e) => *reasons.entry(reason_of(&e)).or_default() += 1,
        }
    }
    let skipped = if entries.is_empty() {
        Some(if reasons.is_empty() {
            "no non-degenerate singular points on the grid".to_string()
        } else {
            reasons.keys().cloned().collect::<Vec<_>>().join("; ")
        })
    } else {
        None
    };
    let max_distance = entries.iter().map(|e| e.distance).fold(0.0, f64::max);
    let all_agree = entries.iter().all(|e| e.agreements.values().all(|v| *v));
    CorrespondenceLeg { side, skipped, entries, max_distance, all_agree }
}

fn reason_of(e: &Error) -> String {
    match e {
        Error::FrameDegenerate { .. } => "Frenet type frame undefined (a^2 + b^2 = 0)".into(),
        Error::EvoluteUndefined { which, .. } => format!("{which} evolute undefined (sign of sigma_F)"),
        Error::SurfaceUndefined { surface, .. } => format!("{surface} undefined"),
        other => other.to_string(),
    }
}

fn entry(model: &FramedCurveModel, side: Side, t: f64, refined: bool) -> Result<Option<CorrespondenceEntry>> {
    let d = frenet_data(model, t)?;
    require_evolute(model, side, &d)?;
    let (focal_tag, dual_tag) = match side {
        Side::Hyperbolic => (SurfaceTag::FocalH, SurfaceTag::DualOfEh),
        Side::DeSitter => (SurfaceTag::FocalD, SurfaceTag::DualOfEd),
    };
    let recs = match side {
        Side::Hyperbolic => singular_locus_h(model, &[t])?,
        Side::DeSitter => singular_locus_d(model, &[t])?,
    };
    let Some(rec) = recs.into_iter().find(|r| r.nondegenerate && !r.whole_fiber) else {
        return Ok(None);
    };
    let ev = evolute(model, side, t)?;
    let frame = frenet_frame(model, t)?;
    let s = require_side(focal_tag, &frame.data)?;
    let f = frame.point(&focal_coeffs(focal_tag, &frame.data, &s, rec.param.theta));
    let direct = (f - ev.point).euclidean_norm();
    let flipped = (f + ev.point).euclidean_norm();

    let dual = match side {
        Side::Hyperbolic => classify_dual_h(model, t)?,
        Side::DeSitter => classify_dual_d(model, t)?,
    };
    let dual_rec = &dual[0];
    let _ = dual_tag;

    use EvolutePointType as E;
    use SingularityType as S;
    let ft = rec.kind;
    let dt = dual_rec.kind;
    let et = ev.point_type;
    let mut agreements = BTreeMap::new();
    agreements.insert("focal_CE_iff_evolute_regular".to_string(), (ft == S::CuspidalEdge) == (et == E::RegularPoint));
    agreements.insert("focal_SW_iff_evolute_cusp".to_string(), (ft == S::Swallowtail) == (et == E::Cusp234));
    agreements.insert("dual_CE_iff_evolute_regular".to_string(), (dt == S::CuspidalEdge) == (et == E::RegularPoint));
    agreements.insert("dual_CCR_iff_evolute_cusp".to_string(), (dt == S::CuspidalCrossCap) == (et == E::Cusp234));
    agreements.insert("focal_CE_iff_dual_CE".to_string(), (ft == S::CuspidalEdge) == (dt == S::CuspidalEdge));
    agreements.insert("focal_SW_iff_dual_CCR".to_string(), (ft == S::Swallowtail) == (dt == S::CuspidalCrossCap));

    Ok(Some(CorrespondenceEntry {
        t,
        theta: rec.param.theta,
        distance: direct.min(flipped),
        antipodal: flipped < direct,
        refined_root: refined,
        focal_type: ft,
        evolute_type: et,
        dual_type: dt,
        eps_focal: rec.diagnostics.get("eps").copied().unwrap_or(f64::NAN),
        eps_dual: dual_rec.diagnostics["eps"],
        eps_evolute: ev.epsilon,
        agreements,
    }))
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
    fn evolute_examples() {
        let m = model(1.0, 1.0, 2.0, 0.0);
        let t = 0.8;
        let fr = m.frame_at(t).unwrap();
        let e = evolute_h(&m, t).unwrap();
        let want = (fr.gamma * 2.0 - fr.v1) * (1.0 / 3f64.sqrt());
        assert!((e.point - want).max_abs() < 1e-14);
        assert_eq!(e.point_type, EvolutePointType::RegularPoint);
        assert!((e.epsilon + 1.0 / 3f64.sqrt()).abs() < 1e-14);
        assert!(matches!(evolute_d(&m, t), Err(Error::EvoluteUndefined { .. })));

        let m = model(2.0, 1.0, 1.0, 0.0);
        let e = evolute_d(&m, t).unwrap();
        assert!((membership_residual(&e.point, Quadric::S31)).abs() < 1e-12);
        assert!((e.epsilon + 2.0 / 3f64.sqrt()).abs() < 1e-14);

        let m = model(1.0, 0.0, 0.0, 0.0);
        assert!(evolute_h(&m, t).is_err());
    }

    #[test]
    fn dual_examples() {
        let m = model(1.0, 1.0, 2.0, 0.0);
        let fr = m.frame_at(0.4).unwrap();
        assert_eq!(dual_of_evolute_h(&m, 0.4, 0.0).unwrap(), fr.mu);
        let p = dual_of_evolute_h(&m, 0.4, std::f64::consts::FRAC_PI_2).unwrap();
        assert!((p.norm_sq() - 1.0).abs() < 1e-12);
        assert_eq!(lambda_dual_h(&m, 0.4, 0.0).unwrap(), 0.0);
        let l = lambda_dual_h(&m, 0.4, std::f64::consts::FRAC_PI_2).unwrap();
        assert!((l + 12f64.sqrt() / 3.0).abs() < 1e-14);
        let recs = classify_dual_h(&m, 0.4).unwrap();
        assert!(recs.iter().all(|r| r.kind == SingularityType::CuspidalEdge));

        let m = model(2.0, 1.0, 1.0, 0.0);
        let p = dual_of_evolute_d(&m, 0.4, 1.0).unwrap();
        assert!((p.norm_sq() - 1.0).abs() < 1e-9);
        let l = lambda_dual_d(&m, 0.4, 1.0).unwrap();
        assert!((l + 1f64.sinh() * 3f64.sqrt() / 3.0).abs() < 1e-14);
        assert_eq!(classify_dual_d(&m, 0.4).unwrap()[0].kind, SingularityType::CuspidalEdge);
    }

    #[test]
    fn correspondence_of_constant_quartets() {
        let ts = crate::framed::linspace(0.0, 2.0, 11);
        let r = correspondence_check(&model(1.0, 1.0, 2.0, 0.0), &ts);
        assert_eq!(r.hyperbolic.entries.len(), 11);
        assert!(r.hyperbolic.max_distance < 1e-8);
        assert!(r.hyperbolic.all_agree);
        assert!(r.de_sitter.skipped.is_some());

        let r = correspondence_check(&model(2.0, 1.0, 1.0, 0.0), &ts);
        assert!(r.hyperbolic.skipped.is_some());
        assert!(r.de_sitter.all_agree && r.de_sitter.entries.len() == 11);

        let r = correspondence_check(&model(1.0, 0.0, 0.0, 0.0), &ts);
        assert!(r.hyperbolic.skipped.is_some() && r.de_sitter.skipped.is_some());
    }
}
