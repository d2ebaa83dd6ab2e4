//! Stages shared by the subcommands, and the full pipeline.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use hypfocal::focal::sigma_sign;
use hypfocal::{
    classify_dual_d, classify_dual_h, correspondence_check, evolute_d, evolute_h, front_verdict,
    frenet_data, integrate_frame, isotropy_residuals, pair_sample, singular_locus_d,
    singular_locus_h, surface_point, CorrespondenceReport, EnginePair, Error, EvolutePointType,
    EvoluteSample, FramedCurveModel, Side, SingularPointRecord, SurfaceTag, Tolerances,
};
use sha2::{Digest, Sha256};

use crate::export::{
    export_loci_csv, export_obj, render_evolute_csv, render_frames_csv, sort_records, write_file,
    SurfaceMesh,
};
use crate::project::Projection;
use crate::report::*;
use crate::spec::{CurveSpec, Product};
use crate::CliError;

/// Step used for the difference stencils of the duality residuals.
const PAIR_STEP: f64 = 1e-4;
/// Cap on (t, θ) samples per dual pair.
const PAIR_T: usize = 20;
const PAIR_THETA: usize = 10;
/// Image-coincidence threshold of the correspondence legs.
pub const DISTANCE_TOL: f64 = 1e-8;

/// A spec with its integrated frame.
pub struct Session {
    pub spec: CurveSpec,
    pub tol: Tolerances,
    pub model: FramedCurveModel,
    pub ts: Vec<f64>,
    pub thetas: Vec<f64>,
}

fn numeric(stage: &'static str) -> impl Fn(Error) -> CliError {
    move |source| CliError::Numeric { stage, source }
}

/// Short reason for an evaluation failure that means "not defined here".
fn undefined_reason(e: &Error) -> Option<String> {
    match e {
        Error::FrameDegenerate { .. } => Some("Frenet type frame undefined (a^2 + b^2 = 0)".into()),
        Error::SurfaceUndefined { surface, .. } => Some(format!("{surface} undefined (sign of A^2 - M^2 or sigma_F)")),
        Error::EvoluteUndefined { which, .. } => Some(format!("{which} evolute undefined (sign of sigma_F)")),
        Error::Grid { source, .. } => undefined_reason(source),
        _ => None,
    }
}

impl Session {
    pub fn new(spec: &CurveSpec) -> Result<Self, CliError> {
        spec.validate()?;
        let tol = spec.tolerances(&[])?;
        let q = spec.quartet()?;
        let model = integrate_frame(&q, spec.domain.t1, spec.initial()?, spec.step(), &tol)
            .map_err(numeric("integrate"))?;
        Ok(Session { spec: spec.clone(), tol, model, ts: spec.t_grid(), thetas: spec.theta_grid() })
    }

    pub fn integration(&self) -> IntegrationSummary {
        let s = &self.model.stats;
        IntegrationSummary {
            steps: s.steps,
            step: s.step,
            max_drift: s.max_drift,
            worst_t: s.worst_t,
            corrections: s.corrections,
            orientation: self.model.orientation,
        }
    }

    pub fn sigma_runs(&self) -> Vec<SignRun> {
        let keys: Vec<&'static str> = self
            .ts
            .iter()
            .map(|&t| match frenet_data(&self.model, t) {
                Ok(d) => match sigma_sign(&self.model, &d) {
                    1 => "positive",
                    -1 => "negative",
                    _ => "zero",
                },
                Err(_) => "undefined",
            })
            .collect();
        runs(&self.ts, &keys)
            .into_iter()
            .map(|(sign, t_start, t_end)| SignRun { sign: sign.to_string(), t_start, t_end })
            .collect()
    }

    /// Definedness of a surface along the grid and the distinct reasons it is not.
    fn definedness(&self, eval: impl Fn(f64) -> hypfocal::Result<()>, issues: &mut Vec<Issue>, stage: &str) -> (Vec<Interval>, Option<String>) {
        let mut reasons = BTreeSet::new();
        let ok: Vec<bool> = self
            .ts
            .iter()
            .map(|&t| match eval(t) {
                Ok(()) => true,
                Err(e) => {
                    match undefined_reason(&e) {
                        Some(r) => reasons.insert(r),
                        None => {
                            issues.push(Issue { stage: stage.into(), t: Some(t), message: e.to_string() });
                            false
                        }
                    };
                    false
                }
            })
            .collect();
        let defined: Vec<Interval> = runs(&self.ts, &ok)
            .into_iter()
            .filter(|r| r.0)
            .map(|(_, t_start, t_end)| Interval { t_start, t_end })
            .collect();
        let skipped = defined.is_empty().then(|| {
            if reasons.is_empty() {
                "no grid point could be evaluated".to_string()
            } else {
                reasons.into_iter().collect::<Vec<_>>().join("; ")
            }
        });
        (defined, skipped)
    }

    /// Singular points of the focal surfaces (grid-wise) and of the dual
    /// surfaces (at θ = 0, plus θ = π on the circle fiber).
    pub fn loci(&self, issues: &mut Vec<Issue>) -> Vec<SingularPointRecord> {
        let mut out = Vec::new();
        for &t in &self.ts {
            let attempts: [(&str, hypfocal::Result<Vec<SingularPointRecord>>); 4] = [
                ("focal_h", singular_locus_h(&self.model, &[t])),
                ("focal_d", singular_locus_d(&self.model, &[t])),
                ("dual_h", classify_dual_h(&self.model, t)),
                ("dual_d", classify_dual_d(&self.model, t)),
            ];
            for (stage, r) in attempts {
                match r {
                    Ok(recs) => out.extend(recs),
                    Err(e) if undefined_reason(&e).is_some() => {}
                    Err(e) => issues.push(Issue { stage: stage.into(), t: Some(t), message: e.to_string() }),
                }
            }
        }
        sort_records(&mut out);
        out
    }

    pub fn evolutes(&self) -> Vec<EvoluteSample> {
        let mut out = Vec::new();
        for side in [Side::Hyperbolic, Side::DeSitter] {
            for &t in &self.ts {
                let e = match side {
                    Side::Hyperbolic => evolute_h(&self.model, t),
                    Side::DeSitter => evolute_d(&self.model, t),
                };
                out.extend(e.ok());
            }
        }
        out
    }

    pub fn meshes(&self) -> Vec<SurfaceMesh> {
        SurfaceTag::ALL
            .iter()
            .map(|&tag| SurfaceMesh::sample(&self.model, tag, &self.ts, &self.thetas))
            .filter(|m| m.defined_rows() > 0)
            .collect()
    }

    pub fn correspondence(&self) -> CorrespondenceReport {
        correspondence_check(&self.model, &self.ts)
    }

    /// Evenly thinned subset of the interior of a grid.
    fn thin(grid: &[f64], keep: usize) -> Vec<f64> {
        let inner = if grid.len() > 2 { &grid[1..grid.len() - 1] } else { grid };
        if inner.len() <= keep {
            return inner.to_vec();
        }
        (0..keep).map(|i| inner[i * (inner.len() - 1) / (keep - 1).max(1)]).collect()
    }

    pub fn duality(&self) -> Vec<DualityCheck> {
        let ts = Self::thin(&self.ts, PAIR_T);
        let thetas = Self::thin(&self.thetas, PAIR_THETA);
        EnginePair::ALL
            .iter()
            .map(|&pair| {
                let mut samples = Vec::new();
                let mut reasons = BTreeSet::new();
                for &t in &ts {
                    if t - 2.0 * PAIR_STEP < self.spec.domain.t0 || t + 2.0 * PAIR_STEP > self.spec.domain.t1 {
                        continue;
                    }
                    for &th in &thetas {
                        match pair_sample(&self.model, pair, t, th, PAIR_STEP) {
                            Ok(s) => samples.push(s),
                            Err(e) => {
                                reasons.insert(undefined_reason(&e).unwrap_or_else(|| e.to_string()));
                            }
                        }
                    }
                }
                let max_residual = samples
                    .iter()
                    .flat_map(isotropy_residuals)
                    .map(f64::abs)
                    .fold(0.0, f64::max);
                let max_membership_defect =
                    samples.iter().map(|s| s.membership_defect()).fold(0.0, f64::max);
                let (status, verdict, reason) = if samples.is_empty() {
                    let why = if reasons.is_empty() {
                        "no interior sample points".to_string()
                    } else {
                        reasons.into_iter().collect::<Vec<_>>().join("; ")
                    };
                    (Status::Skipped, None, Some(why))
                } else {
                    let v = front_verdict(&samples, self.tol.dual, self.tol.rank);
                    let pass = max_residual <= self.tol.dual && max_membership_defect <= self.tol.dual;
                    (if pass { Status::Pass } else { Status::Fail }, Some(v), None)
                };
                DualityCheck {
                    pair,
                    name: pair.name().to_string(),
                    fibration: pair.fibration(),
                    status,
                    samples: samples.len(),
                    max_residual,
                    max_membership_defect,
                    verdict,
                    reason,
                }
            })
            .collect()
    }
}

/// SHA-256 of the canonical JSON serialization of the spec.
pub fn spec_digest(spec: &CurveSpec) -> String {
    let bytes = serde_json::to_vec(spec).expect("spec serializes");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn surface_summary(session: &Session, tag: SurfaceTag, loci: &[SingularPointRecord], issues: &mut Vec<Issue>) -> SurfaceSummary {
    let (defined, skipped) = session.definedness(
        |t| surface_point(&session.model, tag, t, 0.0).map(|_| ()),
        issues,
        tag.name(),
    );
    let mut types = BTreeMap::new();
    let mut records = 0;
    for r in loci.iter().filter(|r| r.surface == tag) {
        records += 1;
        *types.entry(r.kind.name().to_string()).or_insert(0) += 1;
    }
    SurfaceSummary { surface: tag, defined, skipped, records, types }
}

fn evolute_summary(session: &Session, side: Side, samples: &[EvoluteSample], issues: &mut Vec<Issue>) -> EvoluteSummary {
    let eval = |t: f64| match side {
        Side::Hyperbolic => evolute_h(&session.model, t).map(|_| ()),
        Side::DeSitter => evolute_d(&session.model, t).map(|_| ()),
    };
    let (defined, skipped) = session.definedness(eval, issues, "evolute");
    let of_type = |k: EvolutePointType| {
        samples.iter().filter(|s| s.side == side && s.point_type == k).map(|s| s.t).collect()
    };
    EvoluteSummary {
        side,
        defined,
        skipped,
        cusps: of_type(EvolutePointType::Cusp234),
        degenerate: of_type(EvolutePointType::DegenerateUnclassified),
    }
}

fn checks(session: &Session, corr: &CorrespondenceReport, duality: &[DualityCheck]) -> Vec<CheckLine> {
    let mut out = Vec::new();
    let drift = session.model.stats.max_drift;
    out.push(CheckLine {
        name: "frame drift".into(),
        status: if drift <= session.tol.frame { Status::Pass } else { Status::Fail },
        detail: format!("max drift {drift:e} at t = {}", session.model.stats.worst_t),
    });
    for leg in corr.legs() {
        let name = format!("correspondence {}", leg.side.name());
        let line = match &leg.skipped {
            Some(why) => CheckLine { name, status: Status::Skipped, detail: why.clone() },
            None => {
                let failed: BTreeSet<&str> = leg
                    .entries
                    .iter()
                    .flat_map(|e| e.agreements.iter().filter(|(_, v)| !**v).map(|(k, _)| k.as_str()))
                    .collect();
                let pass = failed.is_empty() && leg.max_distance <= DISTANCE_TOL;
                let mut detail = format!("{} points, max distance {:e}", leg.entries.len(), leg.max_distance);
                if !failed.is_empty() {
                    detail.push_str(&format!(", disagreeing: {}", failed.into_iter().collect::<Vec<_>>().join(", ")));
                }
                CheckLine { name, status: if pass { Status::Pass } else { Status::Fail }, detail }
            }
        };
        out.push(line);
    }
    for d in duality {
        let detail = match &d.reason {
            Some(r) => r.clone(),
            None => format!("{} samples, max residual {:e}", d.samples, d.max_residual),
        };
        out.push(CheckLine { name: format!("duality {}", d.name), status: d.status, detail });
    }
    out
}

/// Run every stage and write the products the spec asks for into `out_dir`.
pub fn run_pipeline(spec: &CurveSpec, out_dir: Option<&Path>) -> Result<RunReport, CliError> {
    let session = Session::new(spec)?;
    let mut issues = Vec::new();
    let loci = session.loci(&mut issues);
    let evolutes = session.evolutes();
    let surfaces = SurfaceTag::ALL
        .iter()
        .map(|&tag| surface_summary(&session, tag, &loci, &mut issues))
        .collect();
    let evolute_summaries = [Side::Hyperbolic, Side::DeSitter]
        .iter()
        .map(|&side| evolute_summary(&session, side, &evolutes, &mut issues))
        .collect();
    let correspondence = session.correspondence();
    let duality = session.duality();
    let checks = checks(&session, &correspondence, &duality);
    let report = RunReport {
        tool: format!("hypfocal {}", env!("CARGO_PKG_VERSION")),
        spec_name: spec.name.clone(),
        spec_digest: spec_digest(spec),
        integration: session.integration(),
        sigma_f: session.sigma_runs(),
        surfaces,
        evolutes: evolute_summaries,
        loci,
        correspondence,
        duality,
        checks,
        issues,
    };
    if let Some(dir) = out_dir {
        write_products(&session, &report, &evolutes, dir)?;
    }
    Ok(report)
}

fn write_products(session: &Session, report: &RunReport, evolutes: &[EvoluteSample], dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io { path: dir.to_path_buf(), source: e })?;
    let products: BTreeSet<Product> = session.spec.outputs.iter().copied().collect();
    for p in products {
        match p {
            Product::Report => write_file(&dir.join("report.json"), report.to_json().as_bytes())?,
            Product::Loci => export_loci_csv(&report.loci, &dir.join("loci.csv"))?,
            Product::Obj => {
                for mesh in session.meshes() {
                    let proj = Projection::for_quadric(mesh.surface.quadric());
                    export_obj(&mesh, proj, &dir.join(format!("{}.obj", mesh.surface.name())))?;
                }
            }
            Product::Frames => {
                write_file(&dir.join("frames.csv"), render_frames_csv(&session.model, &session.ts)?.as_bytes())?
            }
            Product::Evolute => write_file(&dir.join("evolutes.csv"), render_evolute_csv(evolutes)?.as_bytes())?,
        }
    }
    Ok(())
}
