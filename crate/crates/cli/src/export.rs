//! OBJ meshes and CSV tables. Every writer renders to a string first so the
//! bytes on disk depend only on the input values.

use std::fmt::Write as _;
use std::path::Path;

use hypfocal::{FramedCurveModel, MinkVec, SingularPointRecord, SurfaceTag};

use crate::project::Projection;
use crate::CliError;

/// Surface samples on a t × θ grid. A row is `None` where the surface is
/// undefined at that t.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceMesh {
    pub surface: SurfaceTag,
    pub cols: usize,
    pub rows: Vec<Option<Vec<MinkVec>>>,
}

impl SurfaceMesh {
    /// Sample `which` over `ts` × `thetas`, leaving undefined rows empty.
    pub fn sample(model: &FramedCurveModel, which: SurfaceTag, ts: &[f64], thetas: &[f64]) -> Self {
        let rows = ts
            .iter()
            .map(|&t| hypfocal::surface_grid(model, which, &[t], thetas).ok())
            .collect();
        SurfaceMesh { surface: which, cols: thetas.len(), rows }
    }

    pub fn defined_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }
}

/// OBJ text: one `v` line per vertex of every defined row, then one quad
/// per grid cell whose two rows are both defined.
pub fn render_obj(mesh: &SurfaceMesh, projection: Projection) -> Result<String, CliError> {
    let mut out = String::new();
    writeln!(out, "# hypfocal {} {}x{}", mesh.surface, mesh.rows.len(), mesh.cols).unwrap();
    let mut index = Vec::with_capacity(mesh.rows.len());
    let mut next = 1usize;
    for row in &mesh.rows {
        match row {
            Some(points) => {
                for p in points {
                    let [x, y, z] = projection.apply(p)?;
                    writeln!(out, "v {x} {y} {z}").unwrap();
                }
                index.push(Some(next));
                next += points.len();
            }
            None => index.push(None),
        }
    }
    for w in index.windows(2) {
        let (Some(a), Some(b)) = (w[0], w[1]) else { continue };
        for j in 0..mesh.cols.saturating_sub(1) {
            writeln!(out, "f {} {} {} {}", a + j, a + j + 1, b + j + 1, b + j).unwrap();
        }
    }
    Ok(out)
}

pub fn export_obj(mesh: &SurfaceMesh, projection: Projection, path: &Path) -> Result<(), CliError> {
    write_file(path, render_obj(mesh, projection)?.as_bytes())
}

pub const LOCI_HEADER: [&str; 7] = ["surface", "t", "theta", "lambda", "sigma_F", "type", "nondegenerate"];

/// Records ordered by surface, then t, then θ.
pub fn sort_records(records: &mut [SingularPointRecord]) {
    records.sort_by(|a, b| {
        a.surface
            .cmp(&b.surface)
            .then(a.param.t.total_cmp(&b.param.t))
            .then(a.param.theta.total_cmp(&b.param.theta))
    });
}

pub fn render_loci_csv(records: &[SingularPointRecord]) -> Result<String, CliError> {
    let mut sorted = records.to_vec();
    sort_records(&mut sorted);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(LOCI_HEADER)?;
    for r in &sorted {
        w.write_record([
            r.surface.name().to_string(),
            r.param.t.to_string(),
            r.param.theta.to_string(),
            r.lambda.to_string(),
            r.sigma_f.to_string(),
            r.kind.name().to_string(),
            r.nondegenerate.to_string(),
        ])?;
    }
    csv_string(w)
}

pub fn export_loci_csv(records: &[SingularPointRecord], path: &Path) -> Result<(), CliError> {
    write_file(path, render_loci_csv(records)?.as_bytes())
}

/// One row per stored integration node: t, then γ, v₁, v₂, μ coordinates.
pub fn render_frames_csv(model: &FramedCurveModel, ts: &[f64]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["t".to_string()];
    for v in ["gamma", "v1", "v2", "mu"] {
        header.extend((0..4).map(|i| format!("{v}_{i}")));
    }
    w.write_record(&header)?;
    for &t in ts {
        let f = model.frame_at(t)?;
        let mut row = vec![t.to_string()];
        for v in f.rows() {
            row.extend(v.0.iter().map(|x| x.to_string()));
        }
        w.write_record(&row)?;
    }
    csv_string(w)
}

pub fn render_evolute_csv(samples: &[hypfocal::EvoluteSample]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["side", "t", "x0", "x1", "x2", "x3", "type", "epsilon", "epsilon_prime"])?;
    for s in samples {
        let mut row = vec![s.side.name().to_string(), s.t.to_string()];
        row.extend(s.point.0.iter().map(|x| x.to_string()));
        row.push(format!("{:?}", s.point_type));
        row.push(s.epsilon.to_string());
        row.push(s.epsilon_prime.to_string());
        w.write_record(&row)?;
    }
    csv_string(w)
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })
}
