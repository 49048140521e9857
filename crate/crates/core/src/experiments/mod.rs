//! Experiment driver: reproduces the projection-inequality checks at desk
//! scale and emits machine-readable result tables.

mod corpus;
mod runs;

pub use corpus::{
    default_corpus, random_invertible, random_shear, seeded_polygon, seeded_polygon_corpus,
    symmetric_polytope_vertices, CorpusEntry,
};
pub use runs::{
    exp_example_cap, exp_lemma_suite, exp_orlicz_ratio, exp_petty, exp_stability_sign,
    exp_steiner_monotone, run_all,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::GeometryError;
use crate::metrics::MetricsError;
use crate::orlicz::{OrliczError, PhiSpec};
use crate::symmetrize::SymmetrizeError;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Orlicz(#[from] OrliczError),
    #[error(transparent)]
    Symmetrize(#[from] SymmetrizeError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error("configuration error: {0}")]
    Config(String),
}

/// Everything an experiment run depends on. A fixed config (seed included)
/// reproduces bit-identical output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub dim: usize,
    pub phi: PhiSpec,
    /// Spherical quadrature resolution for polar volumes.
    pub grid_resolution: usize,
    /// Boundary points used when discretizing balls, ellipsoids and caps.
    pub body_resolution: usize,
    pub corpus: Vec<CorpusEntry>,
    pub seed: u64,
    /// Named tolerances; missing names fall back to built-in defaults.
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub output_path: Option<String>,
}

impl ExperimentConfig {
    /// Default configuration for the given dimension.
    pub fn for_dim(dim: usize, seed: u64) -> Self {
        assert!(dim == 2 || dim == 3);
        let grid_resolution = if dim == 2 { 4096 } else { 8192 };
        let body_resolution = if dim == 2 { 256 } else { 2000 };
        ExperimentConfig {
            dim,
            phi: PhiSpec::Power { p: 2.0 },
            grid_resolution,
            body_resolution,
            corpus: default_corpus(dim, seed, body_resolution),
            seed,
            tolerances: BTreeMap::new(),
            output_path: None,
        }
    }

    /// Look up a named tolerance with its default.
    pub fn tol(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }
}

/// One assertion of one experiment: the computed value, the reference it
/// is compared against, the signed margin value - reference, the tolerance
/// used, and the verdict. No assertion passes silently.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultRow {
    pub experiment: String,
    pub body: String,
    pub value: f64,
    pub reference: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl ResultRow {
    pub fn new(
        experiment: &str,
        body: &str,
        value: f64,
        reference: f64,
        tolerance: f64,
        passed: bool,
    ) -> Self {
        ResultRow {
            experiment: experiment.to_string(),
            body: body.to_string(),
            value,
            reference,
            margin: value - reference,
            tolerance,
            passed,
        }
    }
}

/// Fixed-order CSV encoding of the rows:
/// experiment,body,value,reference,margin,tolerance,passed.
pub fn rows_to_csv(rows: &[ResultRow]) -> String {
    let mut out = String::from("experiment,body,value,reference,margin,tolerance,passed\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.experiment, r.body, r.value, r.reference, r.margin, r.tolerance, r.passed
        ));
    }
    out
}

/// JSON mirror of the CSV table.
pub fn rows_to_json(rows: &[ResultRow]) -> String {
    serde_json::to_string_pretty(rows).expect("result rows serialize")
}

/// Sort rows into the deterministic emission order.
pub fn sort_rows(rows: &mut [ResultRow]) {
    rows.sort_by(|a, b| (&a.experiment, &a.body).cmp(&(&b.experiment, &b.body)));
}
