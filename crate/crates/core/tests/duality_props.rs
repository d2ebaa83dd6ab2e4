mod common;

use common::{constant, de_sitter_family, hyperbolic_family};
use hypfocal::{
    front_verdict, isotropy_residuals, pair_sample, EnginePair, FrontVerdict, FramedCurveModel,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn residual_sweep(m: &FramedCurveModel, pair: EnginePair, seed: u64) -> Vec<hypfocal::DualPairSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < 200 {
        let t = rng.random_range(0.05..2.95);
        let th = rng.random_range(-1.5..1.5);
        let Ok(s) = pair_sample(m, pair, t, th, 1e-4) else { continue };
        assert!(s.membership_defect() <= 1e-8, "{}: membership", pair.name());
        for r in isotropy_residuals(&s) {
            assert!(r.abs() <= 1e-8, "{} at t={t} theta={th}: residual {r}", pair.name());
        }
        out.push(s);
    }
    out
}

#[test]
fn all_engine_pairs_are_isotropic() {
    let h = hyperbolic_family();
    let d = de_sitter_family();
    residual_sweep(&h, EnginePair::FocalHMu, 10);
    residual_sweep(&d, EnginePair::FocalDMu, 11);
    residual_sweep(&h, EnginePair::DualEhEvolute, 12);
    residual_sweep(&d, EnginePair::DualEdEvolute, 13);
}

#[test]
fn focal_pair_of_constant_quartet_is_a_front() {
    let m = constant(1.0, 1.0, 2.0, 0.0, 3.0);
    let samples = residual_sweep(&m, EnginePair::FocalHMu, 14);
    assert_eq!(front_verdict(&samples, 1e-8, 1e-6), FrontVerdict::Front);
}

proptest! {
    // Raising the rank threshold never turns a frontal into a front.
    #[test]
    fn verdict_monotone_in_rank_threshold(t in 0.1f64..2.9, th in -1.0f64..1.0, r1 in 1e-9f64..1e-1, r2 in 1e-9f64..1e-1) {
        let m = constant(1.0, 0.0, 1.5, 0.0, 3.0);
        let s = pair_sample(&m, EnginePair::FocalHMu, t, th, 1e-4).unwrap();
        let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
        if front_verdict(&[s], 1e-8, lo) == FrontVerdict::Frontal {
            prop_assert_eq!(front_verdict(&[s], 1e-8, hi), FrontVerdict::Frontal);
        }
    }
}
