//! Types shared by the four surfaces: records, singularity types, grids.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framed::FramedCurveModel;
use crate::frenet::{frenet_frame, FrenetFrame};
use crate::minkowski::{MinkVec, Quadric};
use crate::{evolute, focal};

/// The four surfaces the engine evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SurfaceTag {
    /// Hyperbolic focal surface F^h.
    FocalH,
    /// De Sitter focal surface F^d.
    FocalD,
    /// Δ₁-dual surface of the hyperbolic evolute.
    DualOfEh,
    /// Δ₅-dual surface of the de Sitter evolute.
    DualOfEd,
}

impl SurfaceTag {
    pub const ALL: [SurfaceTag; 4] =
        [SurfaceTag::FocalH, SurfaceTag::FocalD, SurfaceTag::DualOfEh, SurfaceTag::DualOfEd];

    pub fn name(self) -> &'static str {
        match self {
            SurfaceTag::FocalH => "FocalH",
            SurfaceTag::FocalD => "FocalD",
            SurfaceTag::DualOfEh => "DualOfEh",
            SurfaceTag::DualOfEd => "DualOfEd",
        }
    }

    /// The quadric the surface lies on.
    pub fn quadric(self) -> Quadric {
        match self {
            SurfaceTag::FocalH => Quadric::H3,
            _ => Quadric::S31,
        }
    }

    /// True when θ lives on a circle.
    pub fn circle_fiber(self) -> bool {
        matches!(self, SurfaceTag::FocalD | SurfaceTag::DualOfEh)
    }
}

impl fmt::Display for SurfaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Local type of a surface point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SingularityType {
    Regular,
    CuspidalEdge,
    Swallowtail,
    CuspidalBeaks,
    CuspidalLips,
    CuspidalCrossCap,
    DegenerateUnclassified,
}

impl SingularityType {
    pub fn name(self) -> &'static str {
        match self {
            SingularityType::Regular => "Regular",
            SingularityType::CuspidalEdge => "CuspidalEdge",
            SingularityType::Swallowtail => "Swallowtail",
            SingularityType::CuspidalBeaks => "CuspidalBeaks",
            SingularityType::CuspidalLips => "CuspidalLips",
            SingularityType::CuspidalCrossCap => "CuspidalCrossCap",
            SingularityType::DegenerateUnclassified => "DegenerateUnclassified",
        }
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A point (t, θ) of a surface domain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceParam {
    pub t: f64,
    pub theta: f64,
}

/// A singular point with its classification and every value the decision used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularPointRecord {
    pub surface: SurfaceTag,
    pub param: SurfaceParam,
    pub lambda: f64,
    pub sigma_f: f64,
    pub kind: SingularityType,
    pub nondegenerate: bool,
    /// Emitted from a fiber that is singular everywhere.
    pub whole_fiber: bool,
    pub diagnostics: BTreeMap<String, f64>,
}

/// Records on the dual surfaces of the evolutes share the same shape.
pub type DualSurfaceRecord = SingularPointRecord;

/// Outcome of a classification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: SingularityType,
    pub nondegenerate: bool,
    pub diagnostics: BTreeMap<String, f64>,
}

/// Reduce an angle to [0, 2π).
pub fn wrap_angle(theta: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let r = theta.rem_euclid(tau);
    if r >= tau {
        0.0
    } else {
        r
    }
}

/// Evaluate any of the four surfaces at (t, θ).
pub fn surface_point(model: &FramedCurveModel, which: SurfaceTag, t: f64, theta: f64) -> Result<MinkVec> {
    match which {
        SurfaceTag::FocalH => focal::focal_h_point(model, t, theta),
        SurfaceTag::FocalD => focal::focal_d_point(model, t, theta),
        SurfaceTag::DualOfEh => evolute::dual_of_evolute_h(model, t, theta),
        SurfaceTag::DualOfEd => evolute::dual_of_evolute_d(model, t, theta),
    }
}

/// Evaluate a surface on an already converted frame.
pub fn surface_point_in(
    model: &FramedCurveModel,
    frame: &FrenetFrame,
    which: SurfaceTag,
    theta: f64,
) -> Result<MinkVec> {
    match which {
        SurfaceTag::FocalH | SurfaceTag::FocalD => {
            focal::focal_point_in(model, frame, which, theta)
        }
        SurfaceTag::DualOfEh | SurfaceTag::DualOfEd => {
            evolute::dual_point_in(model, frame, which, theta)
        }
    }
}

/// Row-major grid (rows follow `ts`, columns follow `thetas`).
pub fn surface_grid(
    model: &FramedCurveModel,
    which: SurfaceTag,
    ts: &[f64],
    thetas: &[f64],
) -> Result<Vec<MinkVec>> {
    let mut out = Vec::with_capacity(ts.len() * thetas.len());
    if thetas.is_empty() {
        return Ok(out);
    }
    for (row, &t) in ts.iter().enumerate() {
        let grid_err = |col: usize| move |e: Error| Error::Grid { row, col, source: Box::new(e) };
        let frame = frenet_frame(model, t).map_err(grid_err(0))?;
        for (col, &theta) in thetas.iter().enumerate() {
            out.push(surface_point_in(model, &frame, which, theta).map_err(grid_err(col))?);
        }
    }
    Ok(out)
}
