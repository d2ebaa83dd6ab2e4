mod common;

use common::constant;
use hypfocal::framed::{congruence_residual, scalar_invariants};
use hypfocal::minkowski::{mink_dot, MinkVec};
use hypfocal::{frenet_data, integrate_frame, linspace, CurvatureQuartet, FrameSample, Tolerances};
use nalgebra::Matrix4;
use proptest::prelude::*;

#[test]
fn geodesic_closed_form() {
    let m = constant(1.0, 0.0, 0.0, 0.0, 2.0);
    for t in linspace(0.0, 2.0, 41) {
        let f = m.frame_at(t).unwrap();
        let want = MinkVec::new(t.cosh(), 0.0, 0.0, t.sinh());
        assert!((f.gamma - want).max_abs() <= 1e-8, "t={t}");
        assert!((f.mu - MinkVec::new(t.sinh(), 0.0, 0.0, t.cosh())).max_abs() <= 1e-8);
    }
}

#[test]
fn ten_pairings_hold() {
    for (m, n, a, b) in [(1.0, 1.0, 2.0, 0.0), (2.0, 1.0, 1.0, 0.0)] {
        let m = constant(m, n, a, b, 4.0);
        for t in linspace(0.0, 4.0, 81) {
            let f = m.frame_at(t).unwrap();
            let rows = f.rows();
            for i in 0..4 {
                for j in i..4 {
                    let want = match (i, j) {
                        (0, 0) => -1.0,
                        (x, y) if x == y => 1.0,
                        _ => 0.0,
                    };
                    assert!((mink_dot(&rows[i], &rows[j]) - want).abs() <= 1e-9);
                }
            }
        }
    }
}

// Halving the step must shrink the error by about 2⁴.
#[test]
fn fourth_order_convergence() {
    let q = CurvatureQuartet::parse("sin(t)", "0.5 + t", "1 + 0.3*cos(2*t)", "0.2").unwrap();
    let tol = Tolerances::default();
    let run = |h: f64| integrate_frame(&q, 1.0, FrameSample::standard(0.0), h, &tol).unwrap();
    let (a, b, c) = (run(0.04), run(0.02), run(0.01));
    let end = |m: &hypfocal::FramedCurveModel| m.frame_at(1.0).unwrap().to_matrix();
    let e1 = (end(&a) - end(&b)).amax();
    let e2 = (end(&b) - end(&c)).amax();
    let ratio = e1 / e2;
    assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn invariants_of_constant_quartets() {
    let q = CurvatureQuartet::constant(1.0, 1.0, 2.0, 0.0);
    let inv = scalar_invariants(&q);
    let v = |e: &hypfocal::Expr| e.eval(0.7).unwrap();
    assert_eq!((v(&inv.f), v(&inv.g), v(&inv.h), v(&inv.sigma)), (4.0, 2.0, 0.0, 12.0));
    let d = frenet_data(&constant(1.0, 1.0, 2.0, 0.0, 1.0), 0.5).unwrap();
    assert!((d.sigma_f - 12.0).abs() <= 1e-10);
    let d = frenet_data(&constant(2.0, 1.0, 1.0, 0.0, 1.0), 0.5).unwrap();
    assert!((d.sigma_f + 3.0).abs() <= 1e-10);
}

// A boost applied to the initial frame moves the whole curve by the same boost.
#[test]
fn curves_with_equal_curvature_are_congruent() {
    let q = CurvatureQuartet::parse("sin(t)", "1", "2", "t").unwrap();
    let tol = Tolerances::default();
    let s = 0.7f64;
    let mut boost = Matrix4::identity();
    boost[(0, 0)] = s.cosh();
    boost[(0, 1)] = s.sinh();
    boost[(1, 0)] = s.sinh();
    boost[(1, 1)] = s.cosh();
    let f0 = FrameSample::standard(0.0);
    let moved = FrameSample::from_matrix(0.0, &(f0.to_matrix() * boost.transpose()));
    let a = integrate_frame(&q, 2.0, f0, 1e-3, &tol).unwrap();
    let b = integrate_frame(&q, 2.0, moved, 1e-3, &tol).unwrap();
    assert!(congruence_residual(&a, &b, &boost).unwrap() <= 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Drift stays bounded for smooth random quartets.
    #[test]
    fn frame_stays_pseudo_orthonormal(c in prop::array::uniform4(-2.0f64..2.0), w in 0.2f64..3.0) {
        let q = CurvatureQuartet::parse(
            &format!("{} + sin({w}*t)", c[0]),
            &format!("{}*cos(t)", c[1]),
            &format!("{} + 0.5*t", c[2]),
            &format!("{}", c[3]),
        ).unwrap();
        let m = integrate_frame(&q, 2.0, FrameSample::standard(0.0), 1e-3, &Tolerances::default()).unwrap();
        prop_assert!(m.stats.max_drift <= 1e-9);
        for t in linspace(0.0, 2.0, 17) {
            let f = m.frame_at(t).unwrap();
            prop_assert!(f.orthonormality_defect() <= 1e-9);
            prop_assert!(f.wedge_defect(m.orientation) <= 1e-9);
        }
    }
}
