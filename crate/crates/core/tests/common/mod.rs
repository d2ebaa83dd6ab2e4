#![allow(dead_code)]

use hypfocal::minkowski::{det4, MinkVec};
use hypfocal::{integrate_frame, CurvatureQuartet, FrameSample, FramedCurveModel, Tolerances};

pub fn model(m: &str, n: &str, a: &str, b: &str, t1: f64) -> FramedCurveModel {
    let q = CurvatureQuartet::parse(m, n, a, b).unwrap();
    integrate_frame(&q, t1, FrameSample::standard(0.0), 1e-3, &Tolerances::default()).unwrap()
}

pub fn constant(m: f64, n: f64, a: f64, b: f64, t1: f64) -> FramedCurveModel {
    let q = CurvatureQuartet::constant(m, n, a, b);
    integrate_frame(&q, t1, FrameSample::standard(0.0), 1e-3, &Tolerances::default()).unwrap()
}

/// A² > M² on [0, 3].
pub fn hyperbolic_family() -> FramedCurveModel {
    model("0.4 + 0.3*sin(t)", "0.8 + 0.2*cos(2*t)", "1.5 + 0.3*cos(t)", "0.2*t", 3.0)
}

/// M² > A² on [0, 3].
pub fn de_sitter_family() -> FramedCurveModel {
    model("2 + 0.3*sin(t)", "0.7 + 0.2*cos(2*t)", "0.8 + 0.2*cos(t)", "0.1*t", 3.0)
}

/// Five-point central difference of a vector-valued map.
pub fn d5(f: impl Fn(f64) -> MinkVec, x: f64, h: f64) -> MinkVec {
    (f(x - 2.0 * h) - f(x - h) * 8.0 + f(x + h) * 8.0 - f(x + 2.0 * h)) * (1.0 / (12.0 * h))
}

pub fn det(rows: [MinkVec; 4]) -> f64 {
    det4(&rows)
}
