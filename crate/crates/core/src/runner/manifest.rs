use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{Artifact, ExperimentConfig};
use crate::error::Result;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileRecord {
    pub name: String,
    pub bytes: usize,
    pub sha256: String,
}

/// Provenance of one run. Contains no timestamps or paths, so rerunning a
/// config reproduces it byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub modules: BTreeMap<String, String>,
    pub experiment: String,
    pub config_sha256: String,
    pub grid: serde_json::Value,
    pub tolerances: serde_json::Value,
    pub seed: u64,
    pub files: Vec<FileRecord>,
}

fn modules() -> BTreeMap<String, String> {
    ["geometry", "spectral", "elliptic", "analysis", "heleshaw", "runner"]
        .iter()
        .map(|m| (m.to_string(), env!("CARGO_PKG_VERSION").to_string()))
        .collect()
}

fn records(files: &[Artifact]) -> Vec<FileRecord> {
    let mut out: Vec<FileRecord> = files
        .iter()
        .map(|f| FileRecord { name: f.name.clone(), bytes: f.bytes.len(), sha256: sha256_hex(&f.bytes) })
        .collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

impl Manifest {
    pub fn for_experiment(config: &ExperimentConfig, files: &[Artifact]) -> Result<Self> {
        let echo = Artifact::json("config.json", &config.echo()).bytes;
        Ok(Manifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            modules: modules(),
            experiment: config.experiment.name().to_string(),
            config_sha256: sha256_hex(&echo),
            grid: serde_json::json!({ "h": config.h()? }),
            tolerances: serde_json::json!({
                "solver_tol": config.solver.tol,
                "solver_max_iter": config.solver.max_iter,
                "margin": config.analysis.margin,
                "min_radius_cells": crate::analysis::MIN_RADIUS_CELLS,
                "wet_threshold": crate::heleshaw::WET_THRESHOLD,
            }),
            seed: config.analysis.seed,
            files: records(files),
        })
    }

    pub(crate) fn for_sweep(config_echo: &serde_json::Value, files: &[Artifact]) -> Result<Self> {
        let echo = Artifact::json("sweep.json", config_echo).bytes;
        Ok(Manifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            modules: modules(),
            experiment: "sweep".into(),
            config_sha256: sha256_hex(&echo),
            grid: serde_json::Value::Null,
            tolerances: serde_json::Value::Null,
            seed: 0,
            files: records(files),
        })
    }
}
