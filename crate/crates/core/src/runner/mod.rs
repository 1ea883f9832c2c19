//! Experiment runner: parse a JSON config, execute one named experiment and
//! emit JSON/CSV/SVG artifacts together with a `manifest.json`.
//!
//! Configs are checked against the published schema
//! (`schema/experiment.schema.json`) before they are deserialized, so every
//! unknown key is rejected with a path-qualified diagnostic. The `out_dir`
//! key is excluded from the hashed config echo, which keeps manifests
//! byte-identical across output locations.

mod experiments;
mod manifest;
mod plot;
mod sweep;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::elliptic::{CoefficientSpec, SolveOptions};
use crate::error::{Error, Result};
use crate::geometry::DomainSpec;

pub use manifest::{sha256_hex, FileRecord, Manifest};
pub use plot::{svg_line_plot, PlotSeries};
pub use sweep::{sweep, SweepConfig, SweepOutcome, SweepRow};

/// The published config schema.
pub const SCHEMA: &str = include_str!("../../schema/experiment.schema.json");

/// Grid width used when a config names neither `grid.h` nor `grid.levels`.
pub const DEFAULT_H: f64 = 1.0 / 64.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Alpha,
    Pair,
    Ratio,
    Growth,
    Weiss,
    Fredholm,
    Holder,
    Sumdiv,
    Heleshaw,
    ThresholdSweep,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Alpha => "alpha",
            Experiment::Pair => "pair",
            Experiment::Ratio => "ratio",
            Experiment::Growth => "growth",
            Experiment::Weiss => "weiss",
            Experiment::Fredholm => "fredholm",
            Experiment::Holder => "holder",
            Experiment::Sumdiv => "sumdiv",
            Experiment::Heleshaw => "heleshaw",
            Experiment::ThresholdSweep => "threshold-sweep",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    /// Shorthand for `h = 2^{−levels}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<u32>,
}

impl GridConfig {
    pub fn resolve(&self) -> Result<f64> {
        match (self.h, self.levels) {
            (Some(h), Some(l)) if (h - 0.5f64.powi(l as i32)).abs() > 1e-15 * h => {
                Err(Error::InvalidConfig(format!("grid.h = {h} disagrees with grid.levels = {l}")))
            }
            (Some(h), _) => Ok(h),
            (None, Some(l)) => Ok(0.5f64.powi(l as i32)),
            (None, None) => Ok(DEFAULT_H),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
}

fn default_tol() -> f64 {
    SolveOptions::default().tol
}

fn default_max_iter() -> usize {
    SolveOptions::default().max_iter
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { tol: default_tol(), max_iter: default_max_iter() }
    }
}

impl SolverConfig {
    pub fn options(&self) -> SolveOptions {
        SolveOptions { tol: self.tol, max_iter: self.max_iter }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    #[serde(default = "default_levels")]
    pub levels: usize,
    #[serde(default = "default_margin")]
    pub margin: f64,
    #[serde(default = "default_budget")]
    pub pair_budget: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_beta")]
    pub beta: f64,
    /// Defaults to `e_n / 2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<Vec<f64>>,
    /// Weiss radii; defaults to a geometric ladder between `8h` and `R/2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
}

fn default_levels() -> usize {
    8
}

fn default_margin() -> f64 {
    crate::analysis::DEFAULT_MARGIN
}

fn default_budget() -> usize {
    100_000
}

fn default_seed() -> u64 {
    42
}

fn default_beta() -> f64 {
    0.5
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            levels: default_levels(),
            margin: default_margin(),
            pair_budget: default_budget(),
            seed: default_seed(),
            beta: default_beta(),
            anchor: None,
            radii: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceFamily {
    /// `a_k = 1/k`.
    Harmonic,
    /// `a_k = 1`.
    Constant,
    /// `a_k = 1` at perfect squares, `0` elsewhere.
    Squares,
}

impl SequenceFamily {
    pub fn generate(self, horizon: usize) -> Vec<f64> {
        (1..=horizon)
            .map(|k| match self {
                SequenceFamily::Harmonic => 1.0 / k as f64,
                SequenceFamily::Constant => 1.0,
                SequenceFamily::Squares => {
                    let r = (k as f64).sqrt().round() as usize;
                    if r * r == k {
                        1.0
                    } else {
                        0.0
                    }
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumDivConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<SequenceFamily>,
    /// Text file of nonnegative numbers separated by whitespace, commas or
    /// newlines; `#` starts a comment.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
    #[serde(default = "default_horizon")]
    pub horizon: usize,
    #[serde(default = "default_jmax")]
    pub j_max: usize,
}

fn default_horizon() -> usize {
    100_000
}

fn default_jmax() -> usize {
    5
}

impl Default for SumDivConfig {
    fn default() -> Self {
        SumDivConfig { family: None, file: None, horizon: default_horizon(), j_max: default_jmax() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeleShawConfig {
    pub table: DomainSpec,
    pub source: [f64; 2],
    pub corner: [f64; 2],
    /// Defaults to `10³ · |Ω⁰|`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default = "default_refinement")]
    pub refinement_steps: usize,
}

fn default_steps() -> usize {
    14
}

fn default_refinement() -> usize {
    6
}

fn default_coefficients() -> CoefficientSpec {
    CoefficientSpec::Identity
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainSpec>,
    #[serde(default)]
    pub gamma: f64,
    #[serde(default = "default_coefficients")]
    pub coefficients: CoefficientSpec,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub analysis: AnalysisConfig,
    #[serde(default, skip_serializing)]
    pub out_dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apertures: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sumdiv: Option<SumDivConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heleshaw: Option<HeleShawConfig>,
}

impl ExperimentConfig {
    /// A config with every optional section at its default.
    pub fn new(experiment: Experiment) -> Self {
        ExperimentConfig {
            experiment,
            domain: None,
            gamma: 0.0,
            coefficients: CoefficientSpec::Identity,
            grid: GridConfig::default(),
            solver: SolverConfig::default(),
            analysis: AnalysisConfig::default(),
            out_dir: None,
            apertures: None,
            sumdiv: None,
            heleshaw: None,
        }
    }

    pub fn with_domain(mut self, domain: DomainSpec) -> Self {
        self.domain = Some(domain);
        self
    }

    pub fn with_h(mut self, h: f64) -> Self {
        self.grid = GridConfig { h: Some(h), levels: None };
        self
    }

    /// Validate `value` against the schema, then deserialize it.
    pub fn from_value(value: Value) -> Result<Self> {
        validate(&value)?;
        let cfg: ExperimentConfig = serde_json::from_value(value).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        cfg.grid.resolve()?;
        Ok(cfg)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::InvalidConfig(format!("not JSON: {e}")))?;
        Self::from_value(value)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    /// The config with defaults filled in, as it is echoed to `config.json`.
    pub fn echo(&self) -> Value {
        serde_json::to_value(self).expect("config serializes")
    }

    pub fn h(&self) -> Result<f64> {
        self.grid.resolve()
    }

    pub(crate) fn require_domain(&self) -> Result<&DomainSpec> {
        self.domain
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig(format!("experiment {} needs a domain", self.experiment.name())))
    }
}

fn validator() -> &'static jsonschema::Validator {
    static V: OnceLock<jsonschema::Validator> = OnceLock::new();
    V.get_or_init(|| {
        let schema: Value = serde_json::from_str(SCHEMA).expect("schema is JSON");
        jsonschema::validator_for(&schema).expect("schema compiles")
    })
}

/// Check `value` against the published schema; the error lists every
/// violation as `path: message`.
pub fn validate(value: &Value) -> Result<()> {
    let errors: Vec<String> = validator()
        .iter_errors(value)
        .map(|e| {
            let path = e.instance_path().to_string();
            format!("{}: {e}", if path.is_empty() { "/" } else { &path })
        })
        .collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(errors.join("; ")))
    }
}

/// One emitted file, relative to the output directory.
#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub bytes: Vec<u8>,
}

impl Artifact {
    pub fn new(name: impl Into<String>, bytes: impl Into<Vec<u8>>) -> Self {
        Artifact { name: name.into(), bytes: bytes.into() }
    }

    pub(crate) fn json<T: Serialize>(name: &str, value: &T) -> Self {
        let mut bytes = serde_json::to_vec_pretty(value).expect("report serializes");
        bytes.push(b'\n');
        Artifact::new(name, bytes)
    }
}

/// Result of [`execute`], before anything touches the disk.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    /// Extra artifacts besides `report.json`.
    pub files: Vec<Artifact>,
    /// Scalar results, used as sweep columns.
    pub summary: BTreeMap<String, Value>,
}

/// Run one experiment in memory.
pub fn execute(config: &ExperimentConfig) -> Result<Outcome> {
    experiments::dispatch(config)
}

/// Paths written by [`run`].
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub out_dir: PathBuf,
    pub outcome: Outcome,
    pub manifest: Manifest,
}

/// Execute `config` and write `report.json`, the experiment's artifacts,
/// `config.json` and `manifest.json` into its `out_dir` (default `out`).
///
/// On a numerical failure a `failure.json` with the residual is written
/// before the error is returned.
pub fn run(config: &ExperimentConfig) -> Result<RunOutput> {
    let out_dir = config.out_dir.clone().unwrap_or_else(|| PathBuf::from("out"));
    fs::create_dir_all(&out_dir)?;
    let outcome = match execute(config) {
        Ok(o) => o,
        Err(e) => {
            if let Some(report) = failure_report(&e) {
                write_artifacts(&out_dir, &[Artifact::json("failure.json", &report)])?;
            }
            return Err(e);
        }
    };
    let mut files = vec![Artifact::json("report.json", &outcome.report)];
    files.extend(outcome.files.iter().cloned());
    files.push(Artifact::json("config.json", &config.echo()));
    let manifest = Manifest::for_experiment(config, &files)?;
    files.push(Artifact::json("manifest.json", &manifest));
    write_artifacts(&out_dir, &files)?;
    Ok(RunOutput { out_dir, outcome, manifest })
}

pub(crate) fn write_artifacts(dir: &Path, files: &[Artifact]) -> Result<()> {
    for f in files {
        let path = dir.join(&f.name);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(path, &f.bytes)?;
    }
    Ok(())
}

fn failure_report(e: &Error) -> Option<Value> {
    match e {
        Error::NumericalFailure { message, residual } => Some(serde_json::json!({
            "error": "numerical_failure",
            "message": message,
            "residual": residual,
        })),
        Error::InsufficientResolution(m) => Some(serde_json::json!({
            "error": "insufficient_resolution",
            "message": m,
        })),
        _ => None,
    }
}

/// Process exit status for an error: `2` for invalid input, `3` for
/// numerical trouble, `1` for I/O.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) | Error::EmptyDomain(_) | Error::InvalidConfig(_) | Error::Json(_) => 2,
        Error::NumericalFailure { .. } | Error::InsufficientResolution(_) => 3,
        Error::Io(_) => 1,
    }
}

/// Cap the global worker pool at `HARNACK_LAB_THREADS` when it is set.
pub fn init_threads() -> Result<()> {
    let Ok(var) = std::env::var("HARNACK_LAB_THREADS") else {
        return Ok(());
    };
    let n: usize = var
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::InvalidArgument(format!("HARNACK_LAB_THREADS={var} is not a positive integer")))?;
    // a second initialization in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Set `path` (dot separated) inside a JSON object, creating intermediate
/// objects.
pub fn set_path(root: &mut Value, path: &str, value: Value) -> Result<()> {
    let mut cur = root;
    let parts: Vec<&str> = path.split('.').collect();
    for (i, key) in parts.iter().enumerate() {
        if key.is_empty() {
            return Err(Error::InvalidConfig(format!("empty segment in parameter path {path:?}")));
        }
        let obj = cur
            .as_object_mut()
            .ok_or_else(|| Error::InvalidConfig(format!("{path}: {key} is not inside an object")))?;
        if i + 1 == parts.len() {
            obj.insert(key.to_string(), value);
            return Ok(());
        }
        cur = obj.entry(key.to_string()).or_insert_with(|| Value::Object(Default::default()));
    }
    unreachable!("split yields at least one segment")
}
