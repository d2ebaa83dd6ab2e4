//! Numeric checks of Legendrian duality: pullback residuals of the contact
//! forms on Δ₁ ⊂ H³×S³₁ and Δ₅ ⊂ S³₁×S³₁, and frontal/front verdicts.

use nalgebra::SMatrix;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::evolute::{dual_coeffs, evolute_coeffs, require_dual};
use crate::focal::{focal_coeffs, require_side};
use crate::framed::FramedCurveModel;
use crate::frenet::{frenet_data, frenet_frame, Side};
use crate::minkowski::{membership_residual, MinkVec, Quadric};
use crate::surface::SurfaceTag;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Fibration {
    /// f ∈ H³, g ∈ S³₁.
    Delta1,
    /// f, g ∈ S³₁.
    Delta5,
}

impl Fibration {
    pub fn quadrics(self) -> (Quadric, Quadric) {
        match self {
            Fibration::Delta1 => (Quadric::H3, Quadric::S31),
            Fibration::Delta5 => (Quadric::S31, Quadric::S31),
        }
    }
}

/// A pair of maps (f, g) and their partials at one parameter (u, v).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualPairSample {
    pub f: MinkVec,
    pub g: MinkVec,
    pub df_du: MinkVec,
    pub df_dv: MinkVec,
    pub dg_du: MinkVec,
    pub dg_dv: MinkVec,
    pub fibration: Fibration,
}

impl DualPairSample {
    /// Largest quadric membership residual of the two legs.
    pub fn membership_defect(&self) -> f64 {
        let (qf, qg) = self.fibration.quadrics();
        membership_residual(&self.f, qf).abs().max(membership_residual(&self.g, qg).abs())
    }

    /// Columns ∂/∂u and ∂/∂v of the stacked map (f, g).
    pub fn jacobian(&self) -> SMatrix<f64, 8, 2> {
        SMatrix::<f64, 8, 2>::from_fn(|i, j| {
            let (f, g) = if j == 0 { (self.df_du, self.dg_du) } else { (self.df_dv, self.dg_dv) };
            if i < 4 { f.0[i] } else { g.0[i - 4] }
        })
    }
}

/// (⟨f,g⟩, ⟨f_u,g⟩, ⟨f_v,g⟩, ⟨f,g_u⟩, ⟨f,g_v⟩).
pub fn isotropy_residuals(s: &DualPairSample) -> [f64; 5] {
    [
        s.f.dot(&s.g),
        s.df_du.dot(&s.g),
        s.df_dv.dot(&s.g),
        s.f.dot(&s.dg_du),
        s.f.dot(&s.dg_dv),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrontVerdict {
    Frontal,
    Front,
    NotIsotropic,
}

/// NotIsotropic if some residual exceeds `tau_dual`; Front if the joint
/// derivative has rank 2 everywhere (σ_min > rank_rel·σ_max); else Frontal.
pub fn front_verdict(samples: &[DualPairSample], tau_dual: f64, rank_rel: f64) -> FrontVerdict {
    if samples
        .iter()
        .any(|s| isotropy_residuals(s).iter().any(|r| !(r.abs() <= tau_dual)))
    {
        return FrontVerdict::NotIsotropic;
    }
    let immersive = samples.iter().all(|s| {
        let sv = s.jacobian().singular_values();
        let (hi, lo) = (sv.max(), sv.min());
        hi > 0.0 && lo > rank_rel * hi
    });
    if immersive { FrontVerdict::Front } else { FrontVerdict::Frontal }
}

/// The four dual pairs the engine constructs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnginePair {
    /// (F^h, μ) in Δ₁.
    FocalHMu,
    /// (F^d, μ) in Δ₅.
    FocalDMu,
    /// (F^d_{E^h}, E^h) in Δ₁, with the evolute as the H³ leg.
    DualEhEvolute,
    /// (F^d_{E^d}, E^d) in Δ₅.
    DualEdEvolute,
}

impl EnginePair {
    pub const ALL: [EnginePair; 4] =
        [EnginePair::FocalHMu, EnginePair::FocalDMu, EnginePair::DualEhEvolute, EnginePair::DualEdEvolute];

    pub fn name(self) -> &'static str {
        match self {
            EnginePair::FocalHMu => "(F^h, mu)",
            EnginePair::FocalDMu => "(F^d, mu)",
            EnginePair::DualEhEvolute => "(F^d_Eh, E^h)",
            EnginePair::DualEdEvolute => "(F^d_Ed, E^d)",
        }
    }

    pub fn fibration(self) -> Fibration {
        match self {
            EnginePair::FocalHMu | EnginePair::DualEhEvolute => Fibration::Delta1,
            _ => Fibration::Delta5,
        }
    }

    /// Frenet coordinates of (f, g) at (t, θ). The H³ leg always comes first.
    pub fn coeffs(self, model: &FramedCurveModel, t: f64, theta: f64) -> Result<([f64; 4], [f64; 4])> {
        let d = frenet_data(model, t)?;
        let mu = [0.0, 0.0, 0.0, 1.0];
        Ok(match self {
            EnginePair::FocalHMu => {
                let s = require_side(SurfaceTag::FocalH, &d)?;
                (focal_coeffs(SurfaceTag::FocalH, &d, &s, theta), mu)
            }
            EnginePair::FocalDMu => {
                let s = require_side(SurfaceTag::FocalD, &d)?;
                (focal_coeffs(SurfaceTag::FocalD, &d, &s, theta), mu)
            }
            EnginePair::DualEhEvolute => {
                let s = require_dual(model, SurfaceTag::DualOfEh, &d)?;
                let dual = dual_coeffs(SurfaceTag::DualOfEh, &d, &s, theta);
                (evolute_coeffs(&d, Side::Hyperbolic), dual)
            }
            EnginePair::DualEdEvolute => {
                let s = require_dual(model, SurfaceTag::DualOfEd, &d)?;
                let dual = dual_coeffs(SurfaceTag::DualOfEd, &d, &s, theta);
                (dual, evolute_coeffs(&d, Side::DeSitter))
            }
        })
    }
}

fn stencil(c: impl Fn(f64) -> Result<([f64; 4], [f64; 4])>, x: f64, h: f64) -> Result<([f64; 4], [f64; 4])> {
    let w = [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)];
    let (mut df, mut dg) = ([0.0; 4], [0.0; 4]);
    for (k, wk) in w {
        let (f, g) = c(x + k * h)?;
        for i in 0..4 {
            df[i] += wk * f[i] / (12.0 * h);
            dg[i] += wk * g[i] / (12.0 * h);
        }
    }
    Ok((df, dg))
}

/// Pair sample at (t, θ). Partials come from five-point differences (step `h`)
/// of the Frenet coordinates combined with the frame derivative equations, so
/// they stay accurate when the frame has large coordinates.
pub fn pair_sample(model: &FramedCurveModel, pair: EnginePair, t: f64, theta: f64, h: f64) -> Result<DualPairSample> {
    let frame = frenet_frame(model, t)?;
    let (cf, cg) = pair.coeffs(model, t, theta)?;
    let (cf_t, cg_t) = stencil(|s| pair.coeffs(model, s, theta), t, h)?;
    let (cf_v, cg_v) = stencil(|s| pair.coeffs(model, t, s), theta, h)?;
    let d = &frame.data;
    Ok(DualPairSample {
        f: frame.point(&cf),
        g: frame.point(&cg),
        df_du: frame.point(&d.derive(&cf, &cf_t)),
        df_dv: frame.point(&cf_v),
        dg_du: frame.point(&d.derive(&cg, &cg_t)),
        dg_dv: frame.point(&cg_v),
        fibration: pair.fibration(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framed::{integrate_frame, CurvatureQuartet, FrameSample};
    use crate::tolerances::Tolerances;

    fn e(i: usize) -> MinkVec {
        MinkVec::basis(i)
    }

    fn constant_pair(f: MinkVec, g: MinkVec) -> DualPairSample {
        DualPairSample {
            f,
            g,
            df_du: MinkVec::ZERO,
            df_dv: MinkVec::ZERO,
            dg_du: MinkVec::ZERO,
            dg_dv: MinkVec::ZERO,
            fibration: Fibration::Delta1,
        }
    }

    #[test]
    fn trivial_residuals() {
        let s = constant_pair(e(0), e(1));
        assert_eq!(isotropy_residuals(&s), [0.0; 5]);
        assert_eq!(s.membership_defect(), 0.0);
        assert_eq!(front_verdict(&[s], 1e-8, 1e-6), FrontVerdict::Frontal);

        let f = MinkVec::new(1.0, 0.0, 0.0, 0.0);
        let s = constant_pair(f, e(1) + f * 0.1);
        assert!((isotropy_residuals(&s)[0] + 0.1).abs() < 1e-15);
        assert_eq!(front_verdict(&[s], 1e-8, 1e-6), FrontVerdict::NotIsotropic);
    }

    #[test]
    fn focal_pair_is_a_front() {
        let m = integrate_frame(
            &CurvatureQuartet::constant(1.0, 1.0, 2.0, 0.0),
            2.0,
            FrameSample::standard(0.0),
            1e-3,
            &Tolerances::default(),
        )
        .unwrap();
        let mut samples = Vec::new();
        for &(t, th) in &[(0.3, 0.0), (0.9, 0.5), (1.5, -1.0)] {
            let s = pair_sample(&m, EnginePair::FocalHMu, t, th, 1e-4).unwrap();
            assert!(isotropy_residuals(&s).iter().all(|r| r.abs() < 1e-8));
            samples.push(s);
        }
        assert_eq!(front_verdict(&samples, 1e-8, 1e-6), FrontVerdict::Front);
    }
}
