//! Experiment report container and CSV/JSON writers.

use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// A reproducible experiment record: full configuration (including the
/// master seed), per-trial rows, and aggregate summary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport<R> {
    pub experiment: String,
    pub config: serde_json::Value,
    pub rows: Vec<R>,
    pub summary: serde_json::Value,
}

/// Fixed-column CSV encoding for a row type.
pub trait CsvRow {
    fn csv_header() -> &'static str;
    fn csv_record(&self) -> String;
}

impl<R: Serialize + DeserializeOwned + CsvRow> ExperimentReport<R> {
    pub fn write_json(&self, path: &Path) -> Result<()> {
        crate::io::save_json(path, self)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(file, "{}", R::csv_header())?;
        for row in &self.rows {
            writeln!(file, "{}", row.csv_record())?;
        }
        Ok(())
    }

    /// Writes `<dir>/<experiment>.json` and `.csv`; returns the JSON path.
    pub fn write_to_dir(&self, dir: &Path) -> Result<std::path::PathBuf> {
        std::fs::create_dir_all(dir)?;
        let json = dir.join(format!("{}.json", self.experiment));
        self.write_json(&json)?;
        self.write_csv(&dir.join(format!("{}.csv", self.experiment)))?;
        Ok(json)
    }
}

/// Per-trial solver outcome row, shared by the sweep experiments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub cell: usize,
    pub trial: usize,
    pub n: usize,
    pub m: usize,
    pub ensemble: String,
    pub signal_class: String,
    pub trial_seed: u64,
    /// Noise mass per measurement, `||w||_1 / m`.
    pub noise_l1_over_m: f64,
    /// `||X_hat - x0 x0*||_HS / ||x0 x0*||_HS`.
    pub hs_err_rel: f64,
    pub schatten1_err: f64,
    pub signal_err: f64,
    pub conj_signal_err: f64,
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
    pub success: bool,
    pub wall_time_ms: f64,
}

impl TrialRow {
    /// Copy with the timing field cleared, for reproducibility
    /// comparisons (rows are bitwise identical modulo wall time).
    pub fn without_wall_time(&self) -> TrialRow {
        TrialRow {
            wall_time_ms: 0.0,
            ..self.clone()
        }
    }
}

impl CsvRow for TrialRow {
    fn csv_header() -> &'static str {
        "cell,trial,n,m,ensemble,signal_class,trial_seed,noise_l1_over_m,hs_err_rel,schatten1_err,signal_err,conj_signal_err,objective,iterations,converged,success,wall_time_ms"
    }

    fn csv_record(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.cell,
            self.trial,
            self.n,
            self.m,
            self.ensemble,
            self.signal_class,
            self.trial_seed,
            self.noise_l1_over_m,
            self.hs_err_rel,
            self.schatten1_err,
            self.signal_err,
            self.conj_signal_err,
            self.objective,
            self.iterations,
            self.converged,
            self.success,
            self.wall_time_ms
        )
    }
}

/// One verification check outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    /// JSON-encoded inputs of the check.
    pub inputs: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CsvRow for CheckRow {
    fn csv_header() -> &'static str {
        "check,inputs,value,tolerance,pass"
    }

    fn csv_record(&self) -> String {
        format!(
            "{},\"{}\",{},{},{}",
            self.check,
            self.inputs.replace('"', "\"\""),
            self.value,
            self.tolerance,
            self.pass
        )
    }
}
