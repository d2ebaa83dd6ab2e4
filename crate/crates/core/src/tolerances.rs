//! Numerical thresholds used for every "equals zero" decision.

use serde::{Deserialize, Serialize};

/// Tunable thresholds. All default values are the documented ones.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Frame pseudo-orthonormality tolerance.
    pub frame: f64,
    /// Degeneracy of a² + b² and of |A² − M²|.
    pub zero: f64,
    /// Relative zero test for classification quantities.
    pub sing: f64,
    /// Isotropy residual threshold for duality verdicts.
    pub dual: f64,
    /// Relative singular value cut-off for rank decisions.
    pub rank: f64,
    /// Half-width of the θ window sampled on whole-fiber-singular hyperbolic fibers.
    pub theta_window: f64,
    /// Number of θ samples on a whole-fiber-singular fiber.
    pub fiber_samples: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            frame: 1e-9,
            zero: 1e-10,
            sing: 1e-8,
            dual: 1e-8,
            rank: 1e-6,
            theta_window: 3.0,
            fiber_samples: 13,
        }
    }
}

impl Tolerances {
    /// |x| ≤ τ_sing · (1 + mag).
    pub fn near_zero(&self, x: f64, mag: f64) -> bool {
        x.abs() <= self.sing * (1.0 + mag.abs())
    }

    /// Override one field by name. Unknown names are rejected.
    pub fn set(&mut self, name: &str, value: f64) -> Result<(), String> {
        if !value.is_finite() || value < 0.0 {
            return Err(format!("tolerance {name} must be a finite non-negative number"));
        }
        match name {
            "frame" => self.frame = value,
            "zero" => self.zero = value,
            "sing" => self.sing = value,
            "dual" => self.dual = value,
            "rank" => self.rank = value,
            "theta_window" => self.theta_window = value,
            "fiber_samples" => {
                if value.fract() != 0.0 || value < 1.0 {
                    return Err("tolerance fiber_samples must be a positive integer".into());
                }
                self.fiber_samples = value as usize
            }
            _ => return Err(format!("unknown tolerance {name:?}")),
        }
        Ok(())
    }
}
