use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{execute, set_path, write_artifacts, Artifact, ExperimentConfig, Manifest};
use crate::error::{Error, Result};

/// A base config and, for each dotted parameter path, the values to try.
/// Rows are the cartesian product, with paths in lexicographic order and the
/// last path varying fastest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub base: Value,
    pub parameters: BTreeMap<String, Vec<Value>>,
    #[serde(default, skip_serializing)]
    pub out_dir: Option<PathBuf>,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SweepConfig =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(format!("sweep config: {e}")))?;
        if !cfg.base.is_object() {
            return Err(Error::InvalidConfig("sweep base must be an object".into()));
        }
        if cfg.parameters.values().any(|v| v.is_empty()) {
            return Err(Error::InvalidConfig("every sweep parameter needs at least one value".into()));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    /// Parameter assignments, one per row.
    pub fn rows(&self) -> Vec<Vec<(String, Value)>> {
        let mut rows: Vec<Vec<(String, Value)>> = vec![vec![]];
        for (path, values) in &self.parameters {
            rows = rows
                .into_iter()
                .flat_map(|r| {
                    values.iter().map(move |v| {
                        let mut r = r.clone();
                        r.push((path.clone(), v.clone()));
                        r
                    })
                })
                .collect();
        }
        rows
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub assignment: Vec<(String, Value)>,
    /// `ok`, or the error kind followed by its message.
    pub status: String,
    pub summary: BTreeMap<String, Value>,
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub csv: String,
    pub manifest: Manifest,
}

fn run_row(base: &Value, assignment: &[(String, Value)]) -> SweepRow {
    let result = (|| {
        let mut cfg = base.clone();
        for (p, v) in assignment {
            set_path(&mut cfg, p, v.clone())?;
        }
        let cfg = ExperimentConfig::from_value(cfg)?;
        execute(&cfg)
    })();
    let (status, summary) = match result {
        Ok(o) => ("ok".to_string(), o.summary),
        Err(e) => (status_of(&e), BTreeMap::new()),
    };
    SweepRow { assignment: assignment.to_vec(), status, summary }
}

fn status_of(e: &Error) -> String {
    let kind = match e {
        Error::InvalidArgument(_) => "invalid_argument",
        Error::EmptyDomain(_) => "empty_domain",
        Error::NumericalFailure { .. } => "numerical_failure",
        Error::InsufficientResolution(_) => "insufficient_resolution",
        Error::InvalidConfig(_) | Error::Json(_) => "invalid_config",
        Error::Io(_) => "io",
    };
    format!("{kind}: {e}")
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Run every row, collecting failures in the status column, and write
/// `sweep.csv`, `sweep.json` and `manifest.json` into `out_dir` when given.
pub fn sweep(cfg: &SweepConfig, out_dir: Option<&Path>) -> Result<SweepOutcome> {
    let rows: Vec<SweepRow> = cfg.rows().par_iter().map(|a| run_row(&cfg.base, a)).collect();
    let keys: BTreeSet<&String> = rows.iter().flat_map(|r| r.summary.keys()).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["row".to_string()];
    header.extend(cfg.parameters.keys().cloned());
    header.push("status".into());
    header.extend(keys.iter().map(|k| k.to_string()));
    w.write_record(&header).map_err(csv_err)?;
    for (i, r) in rows.iter().enumerate() {
        let mut rec = vec![i.to_string()];
        rec.extend(r.assignment.iter().map(|(_, v)| cell(v)));
        rec.push(r.status.clone());
        rec.extend(keys.iter().map(|k| r.summary.get(*k).map_or_else(String::new, cell)));
        w.write_record(&rec).map_err(csv_err)?;
    }
    let csv = String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.into_error()))?).expect("csv is UTF-8");
    let echo = serde_json::to_value(cfg)?;
    let mut files = vec![Artifact::new("sweep.csv", csv.clone()), Artifact::json("sweep.json", &echo)];
    let manifest = Manifest::for_sweep(&echo, &files)?;
    files.push(Artifact::json("manifest.json", &manifest));
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)?;
        write_artifacts(dir, &files)?;
    }
    Ok(SweepOutcome { rows, csv, manifest })
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}
