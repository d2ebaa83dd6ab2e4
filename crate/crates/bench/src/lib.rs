//! Fixtures shared by the benchmarks.

use hypfocal::{integrate_frame, CurvatureQuartet, FrameSample, FramedCurveModel, Tolerances};

/// A quartet with A² > M² on [0, 3], so the hyperbolic side is populated.
pub fn hyperbolic_quartet() -> CurvatureQuartet {
    CurvatureQuartet::parse("0.4 + 0.3*sin(t)", "0.8 + 0.2*cos(2*t)", "1.5 + 0.3*cos(t)", "0.2*t")
        .expect("fixture parses")
}

pub fn integrate(q: &CurvatureQuartet, t1: f64, step: f64) -> FramedCurveModel {
    integrate_frame(q, t1, FrameSample::standard(0.0), step, &Tolerances::default()).expect("fixture integrates")
}

/// Example spec bundled with the CLI.
pub fn bundled_spec(name: &str) -> hypfocal_cli::CurveSpec {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../cli/specs").join(format!("{name}.json"));
    hypfocal_cli::load_spec(&path).expect("bundled spec loads")
}
