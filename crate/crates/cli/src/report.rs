//! The run report. It has no timestamp, so identical specs give identical bytes.

use std::collections::BTreeMap;

use hypfocal::{
    CorrespondenceReport, EnginePair, Fibration, FrontVerdict, Side, SingularPointRecord, SurfaceTag,
};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// A closed run [t_start, t_end] of grid points sharing one property.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub t_start: f64,
    pub t_end: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignRun {
    /// "positive", "negative", "zero" or "undefined".
    pub sign: String,
    pub t_start: f64,
    pub t_end: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegrationSummary {
    pub steps: usize,
    pub step: f64,
    pub max_drift: f64,
    pub worst_t: f64,
    pub corrections: usize,
    pub orientation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSummary {
    pub surface: SurfaceTag,
    pub defined: Vec<Interval>,
    pub skipped: Option<String>,
    pub records: usize,
    /// Count of records per singularity type.
    pub types: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvoluteSummary {
    pub side: Side,
    pub defined: Vec<Interval>,
    pub skipped: Option<String>,
    pub cusps: Vec<f64>,
    pub degenerate: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualityCheck {
    pub pair: EnginePair,
    pub name: String,
    pub fibration: Fibration,
    pub status: Status,
    pub samples: usize,
    /// Largest of the five isotropy residuals over all samples.
    pub max_residual: f64,
    pub max_membership_defect: f64,
    pub verdict: Option<FrontVerdict>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// A non-fatal failure, tagged with the stage and parameter value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Issue {
    pub stage: String,
    pub t: Option<f64>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub spec_name: String,
    pub spec_digest: String,
    pub integration: IntegrationSummary,
    pub sigma_f: Vec<SignRun>,
    pub surfaces: Vec<SurfaceSummary>,
    pub evolutes: Vec<EvoluteSummary>,
    pub loci: Vec<SingularPointRecord>,
    pub correspondence: CorrespondenceReport,
    pub duality: Vec<DualityCheck>,
    pub checks: Vec<CheckLine>,
    pub issues: Vec<Issue>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn failed_checks(&self) -> Vec<&CheckLine> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    pub fn surface(&self, tag: SurfaceTag) -> &SurfaceSummary {
        self.surfaces.iter().find(|s| s.surface == tag).expect("all four surfaces are summarized")
    }
}

/// Merge consecutive grid points with equal keys into runs.
pub fn runs<K: PartialEq + Clone>(ts: &[f64], keys: &[K]) -> Vec<(K, f64, f64)> {
    let mut out: Vec<(K, f64, f64)> = Vec::new();
    for (&t, k) in ts.iter().zip(keys) {
        match out.last_mut() {
            Some(last) if last.0 == *k => last.2 = t,
            _ => out.push((k.clone(), t, t)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn runs_merge_neighbours() {
        let r = runs(&[0.0, 1.0, 2.0, 3.0], &[true, true, false, true]);
        assert_eq!(r, vec![(true, 0.0, 1.0), (false, 2.0, 2.0), (true, 3.0, 3.0)]);
        assert!(runs::<bool>(&[], &[]).is_empty());
    }
}
