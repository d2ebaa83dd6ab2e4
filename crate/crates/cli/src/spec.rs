//! The curve-spec document: a UTF-8 JSON file naming a curvature quartet,
//! sampling domains, optional initial frame and the requested products.

use std::collections::BTreeMap;
use std::path::Path;

use hypfocal::{CurvatureQuartet, FrameSample, Tolerances};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Curvature {
    pub m: String,
    pub n: String,
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Domain {
    pub t0: f64,
    pub t1: f64,
    pub samples: usize,
    /// Integrator step. Defaults to 1e−3.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaRange {
    pub min: f64,
    pub max: f64,
    pub samples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Product {
    /// report.json
    Report,
    /// loci.csv
    Loci,
    /// One OBJ mesh per defined surface.
    Obj,
    /// frames.csv
    Frames,
    /// evolutes.csv
    Evolute,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub name: String,
    pub curvature: Curvature,
    pub domain: Domain,
    pub theta: ThetaRange,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_frame: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<Product>,
}

fn default_outputs() -> Vec<Product> {
    vec![Product::Report]
}

pub const DEFAULT_STEP: f64 = 1e-3;

fn invalid(field: &str, message: impl Into<String>) -> CliError {
    CliError::Validation { field: field.to_string(), message: message.into() }
}

impl CurveSpec {
    pub fn quartet(&self) -> Result<CurvatureQuartet, CliError> {
        let c = &self.curvature;
        let mut parsed = Vec::with_capacity(4);
        for (field, src) in [("m", &c.m), ("n", &c.n), ("a", &c.a), ("b", &c.b)] {
            let e = src
                .parse()
                .map_err(|e: hypfocal::ExprError| invalid(&format!("curvature.{field}"), e.to_string()))?;
            parsed.push(e);
        }
        let [m, n, a, b]: [hypfocal::Expr; 4] = parsed.try_into().expect("four components");
        Ok(CurvatureQuartet::new(m, n, a, b))
    }

    pub fn step(&self) -> f64 {
        self.domain.step.unwrap_or(DEFAULT_STEP)
    }

    pub fn initial(&self) -> Result<FrameSample, CliError> {
        match &self.initial_frame {
            None => Ok(FrameSample::standard(self.domain.t0)),
            Some(v) => {
                let x: [f64; 16] = v
                    .as_slice()
                    .try_into()
                    .map_err(|_| invalid("initial_frame", format!("expected 16 numbers, got {}", v.len())))?;
                let f = FrameSample::from_row_major(self.domain.t0, &x);
                f.validate(1e-10).map_err(|e| invalid("initial_frame", e.to_string()))?;
                Ok(f)
            }
        }
    }

    /// Defaults with the document's overrides, then `extra` (from the command line).
    pub fn tolerances(&self, extra: &[(String, f64)]) -> Result<Tolerances, CliError> {
        let mut tol = Tolerances::default();
        let doc = self.tolerances.iter().map(|(k, v)| (k.as_str(), *v, "tolerances."));
        let cli = extra.iter().map(|(k, v)| (k.as_str(), *v, "--tol "));
        for (name, value, origin) in doc.chain(cli) {
            tol.set(name, value).map_err(|e| invalid(&format!("{origin}{name}"), e))?;
        }
        Ok(tol)
    }

    pub fn t_grid(&self) -> Vec<f64> {
        hypfocal::linspace(self.domain.t0, self.domain.t1, self.domain.samples)
    }

    pub fn theta_grid(&self) -> Vec<f64> {
        hypfocal::linspace(self.theta.min, self.theta.max, self.theta.samples)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let d = &self.domain;
        if !(d.t0.is_finite() && d.t1.is_finite()) {
            return Err(invalid("domain.t0", "bounds must be finite"));
        }
        if d.t1 <= d.t0 {
            return Err(invalid("domain.t1", "must be greater than domain.t0"));
        }
        if d.samples < 2 {
            return Err(invalid("domain.samples", "must be at least 2"));
        }
        if let Some(h) = d.step {
            if !(h > 0.0 && h.is_finite()) {
                return Err(invalid("domain.step", "must be a positive number"));
            }
        }
        let th = &self.theta;
        if !(th.min.is_finite() && th.max.is_finite()) {
            return Err(invalid("theta.min", "bounds must be finite"));
        }
        if th.max <= th.min {
            return Err(invalid("theta.max", "must be greater than theta.min"));
        }
        if th.samples < 2 {
            return Err(invalid("theta.samples", "must be at least 2"));
        }
        if self.name.trim().is_empty() {
            return Err(invalid("name", "must not be empty"));
        }
        self.quartet()?;
        self.initial()?;
        self.tolerances(&[])?;
        Ok(())
    }
}

/// Parse and validate a document held in memory.
pub fn parse_spec(text: &str) -> Result<CurveSpec, CliError> {
    let spec: CurveSpec = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    spec.validate()?;
    Ok(spec)
}

pub fn load_spec(path: &Path) -> Result<CurveSpec, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
    let text = String::from_utf8(bytes).map_err(|_| CliError::Parse {
        line: 0,
        column: 0,
        message: format!("{} is not valid UTF-8", path.display()),
    })?;
    parse_spec(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "name": "minimal",
        "curvature": {"m": "1", "n": "1", "a": "2", "b": "0"},
        "domain": {"t0": 0, "t1": 1, "samples": 5},
        "theta": {"min": -1, "max": 1, "samples": 3}
    }"#;

    #[test]
    fn minimal_spec_is_valid() {
        let s = parse_spec(MINIMAL).unwrap();
        assert_eq!(s.outputs, vec![Product::Report]);
        assert_eq!(s.step(), 1e-3);
        assert_eq!(s.t_grid().len(), 5);
    }

    #[test]
    fn single_sample_names_the_field() {
        let text = MINIMAL.replace("\"samples\": 5", "\"samples\": 1");
        match parse_spec(&text) {
            Err(CliError::Validation { field, .. }) => assert_eq!(field, "domain.samples"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_and_unknown_keys_are_parse_errors() {
        assert!(matches!(parse_spec("{\"name\": "), Err(CliError::Parse { .. })));
        let text = MINIMAL.replace("\"name\"", "\"colour\": 1, \"name\"");
        match parse_spec(&text) {
            Err(CliError::Parse { line, message, .. }) => {
                assert_eq!(line, 2);
                assert!(message.contains("colour"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_pieces_name_their_fields() {
        let field = |text: String| match parse_spec(&text) {
            Err(CliError::Validation { field, .. }) => field,
            other => panic!("{other:?}"),
        };
        assert_eq!(field(MINIMAL.replace("\"a\": \"2\"", "\"a\": \"2*\"")), "curvature.a");
        assert_eq!(field(MINIMAL.replace("\"t1\": 1", "\"t1\": 0")), "domain.t1");
        let with_frame = MINIMAL.replace(
            "\"theta\"",
            "\"initial_frame\": [1,0,0,0, 0,1,0,0, 0,0,1,0, 0,0,0,2], \"theta\"",
        );
        assert_eq!(field(with_frame), "initial_frame");
        let with_tol = MINIMAL.replace("\"theta\"", "\"tolerances\": {\"wobble\": 1}, \"theta\"");
        assert_eq!(field(with_tol), "tolerances.wobble");
    }
}
