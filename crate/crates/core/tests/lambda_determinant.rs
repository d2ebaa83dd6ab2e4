mod common;

use common::{d5, de_sitter_family, det, hyperbolic_family};
use hypfocal::{
    evolute_d, evolute_h, lambda_d, lambda_dual_d, lambda_dual_h, lambda_h, surface_point,
    FramedCurveModel, MinkVec, SurfaceTag,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Sign relating the closed form to det(F, F_t, F_θ, partner) for an oriented frame.
fn sign(tag: SurfaceTag, orientation: f64) -> f64 {
    match tag {
        SurfaceTag::DualOfEh => -orientation,
        _ => orientation,
    }
}

fn partner(m: &FramedCurveModel, tag: SurfaceTag, t: f64) -> MinkVec {
    match tag {
        SurfaceTag::FocalH | SurfaceTag::FocalD => m.frame_at(t).unwrap().mu,
        SurfaceTag::DualOfEh => evolute_h(m, t).unwrap().point,
        SurfaceTag::DualOfEd => evolute_d(m, t).unwrap().point,
    }
}

fn closed_form(m: &FramedCurveModel, tag: SurfaceTag, t: f64, th: f64) -> f64 {
    match tag {
        SurfaceTag::FocalH => lambda_h(m, t, th),
        SurfaceTag::FocalD => lambda_d(m, t, th),
        SurfaceTag::DualOfEh => lambda_dual_h(m, t, th),
        SurfaceTag::DualOfEd => lambda_dual_d(m, t, th),
    }
    .unwrap()
}

fn check(m: &FramedCurveModel, tag: SurfaceTag, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = 1e-3;
    let mut checked = 0;
    while checked < 200 {
        let t = rng.random_range(0.05..2.0);
        let th = if tag.circle_fiber() {
            rng.random_range(0.0..std::f64::consts::TAU)
        } else {
            rng.random_range(-2.0..2.0)
        };
        let f = |t: f64, th: f64| surface_point(m, tag, t, th);
        let Ok(p) = f(t, th) else { continue };
        if [t - 2.0 * h, t + 2.0 * h].iter().any(|&s| f(s, th).is_err()) {
            continue;
        }
        let ft = d5(|s| f(s, th).unwrap(), t, h);
        let fth = d5(|s| f(t, s).unwrap(), th, h);
        let numeric = det([p, ft, fth, partner(m, tag, t)]);
        let lam = sign(tag, m.orientation) * closed_form(m, tag, t, th);
        assert!(
            (numeric - lam).abs() <= 1e-7 * lam.abs().max(1.0),
            "{tag}: t={t} theta={th} det={numeric} lambda={lam}"
        );
        checked += 1;
    }
}

#[test]
fn hyperbolic_focal_lambda() {
    check(&hyperbolic_family(), SurfaceTag::FocalH, 1);
}

#[test]
fn de_sitter_focal_lambda() {
    check(&de_sitter_family(), SurfaceTag::FocalD, 2);
}

#[test]
fn dual_of_hyperbolic_evolute_lambda() {
    check(&hyperbolic_family(), SurfaceTag::DualOfEh, 3);
}

#[test]
fn dual_of_de_sitter_evolute_lambda() {
    check(&de_sitter_family(), SurfaceTag::DualOfEd, 4);
}
