//! Charts that flatten H³ and S³₁ into the unit ball for mesh export.

use hypfocal::{membership_residual, MinkVec, Quadric};

use crate::CliError;

pub const QUADRIC_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    Poincare,
    HollowBall,
}

impl Projection {
    pub fn for_quadric(q: Quadric) -> Self {
        match q {
            Quadric::H3 => Projection::Poincare,
            Quadric::S31 => Projection::HollowBall,
        }
    }

    pub fn apply(self, x: &MinkVec) -> Result<[f64; 3], CliError> {
        match self {
            Projection::Poincare => project_poincare(x),
            Projection::HollowBall => project_hollow_ball(x),
        }
    }
}

fn check(x: &MinkVec, q: Quadric) -> Result<(), CliError> {
    let r = membership_residual(x, q);
    if r.abs() <= QUADRIC_TOL {
        Ok(())
    } else {
        Err(CliError::OffQuadric { point: *x, residual: r })
    }
}

/// Poincaré ball: (x1, x2, x3)/(1 + x0), future sheet of H³ only.
pub fn project_poincare(x: &MinkVec) -> Result<[f64; 3], CliError> {
    check(x, Quadric::H3)?;
    if x[0] <= 0.0 {
        return Err(CliError::OffQuadric { point: *x, residual: f64::NAN });
    }
    let s = 1.0 + x[0];
    Ok([x[1] / s, x[2] / s, x[3] / s])
}

/// Hollow ball: (x1, x2, x3)/(1 + √(1 + x0²)); image radius lies in [1/2, 1).
pub fn project_hollow_ball(x: &MinkVec) -> Result<[f64; 3], CliError> {
    check(x, Quadric::S31)?;
    let s = 1.0 + (1.0 + x[0] * x[0]).sqrt();
    Ok([x[1] / s, x[2] / s, x[3] / s])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poincare_examples() {
        assert_eq!(project_poincare(&MinkVec::basis(0)).unwrap(), [0.0; 3]);
        let p = project_poincare(&MinkVec::new(1f64.cosh(), 0.0, 0.0, 1f64.sinh())).unwrap();
        assert!((p[2] - 0.5f64.tanh()).abs() < 1e-15);
        assert!(matches!(project_poincare(&MinkVec::basis(1)), Err(CliError::OffQuadric { .. })));
    }

    #[test]
    fn hollow_ball_examples() {
        assert_eq!(project_hollow_ball(&MinkVec::basis(1)).unwrap(), [0.5, 0.0, 0.0]);
        assert_eq!(project_hollow_ball(&MinkVec::basis(2)).unwrap(), [0.0, 0.5, 0.0]);
        let x = MinkVec::new(3f64.sinh(), 0.0, 3f64.cosh(), 0.0);
        let p = project_hollow_ball(&x).unwrap();
        let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        assert!((0.5..1.0).contains(&r));
    }
}
