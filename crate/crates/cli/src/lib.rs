//! Pipelines over the hypfocal engine: curve-spec documents in, meshes,
//! loci tables and run reports out.

pub mod export;
pub mod pipeline;
pub mod project;
pub mod report;
pub mod spec;

use std::path::PathBuf;

use hypfocal::MinkVec;

pub use export::{export_loci_csv, export_obj, render_loci_csv, render_obj, SurfaceMesh};
pub use pipeline::{run_pipeline, spec_digest, Session};
pub use project::{project_hollow_ball, project_poincare, Projection};
pub use report::{RunReport, Status};
pub use spec::{load_spec, parse_spec, CurveSpec, Product};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("spec parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("point {point} is off the quadric (residual {residual:e})")]
    OffQuadric { point: MinkVec, residual: f64 },
    #[error("{stage}: {source}")]
    Numeric { stage: &'static str, source: hypfocal::Error },
    #[error("{} check(s) failed: {}", .0.len(), .0.join("; "))]
    ChecksFailed(Vec<String>),
}

impl From<hypfocal::Error> for CliError {
    fn from(source: hypfocal::Error) -> Self {
        CliError::Numeric { stage: "evaluate", source }
    }
}

impl CliError {
    /// 1 for bad input, 2 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Validation { .. } | CliError::Io { .. } => 1,
            _ => 2,
        }
    }
}
