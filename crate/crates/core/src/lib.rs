//! Framed curves in hyperbolic 3-space: frame integration, focal surfaces,
//! evolutes, their dual surfaces, and singularity classification.

pub mod duality;
pub mod error;
pub mod evolute;
pub mod focal;
pub mod framed;
pub mod frenet;
pub mod minkowski;
pub mod surface;
pub mod symexpr;
pub mod tolerances;

pub use duality::{
    front_verdict, isotropy_residuals, pair_sample, DualPairSample, EnginePair, Fibration,
    FrontVerdict,
};
pub use error::{Error, Result};
pub use evolute::{
    classify_dual_d, classify_dual_h, correspondence_check, dual_of_evolute_d,
    dual_of_evolute_h, evolute_d, evolute_h, lambda_dual_d, lambda_dual_h, CorrespondenceEntry,
    CorrespondenceLeg, CorrespondenceReport, EvolutePointType, EvoluteSample,
};
pub use focal::{
    classify_d, classify_h, focal_d_point, focal_h_point, lambda_d, lambda_h, singular_locus_d,
    singular_locus_h,
};
pub use framed::{
    coefficient_matrix, congruence_residual, integrate_frame, linspace, scalar_invariants,
    CurvatureQuartet, FrameSample, FramedCurveModel, IntegrationStats, ScalarInvariants,
};
pub use frenet::{frenet_convert, frenet_data, frenet_frame, FrenetData, FrenetFrame, Side};
pub use minkowski::{
    causal_character, membership_residual, mink_dot, wedge3, CausalClass, MinkVec, Quadric,
};
pub use surface::{
    surface_grid, surface_point, Classification, DualSurfaceRecord, SingularPointRecord,
    SingularityType, SurfaceParam, SurfaceTag,
};
pub use symexpr::{diff_expr, eval_expr, parse_expr, Expr, ExprError};
pub use tolerances::Tolerances;
