use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use harnack_lab::runner::{self, set_path, ExperimentConfig, SweepConfig};
use harnack_lab::Error;

#[derive(Parser)]
#[command(name = "harnack-lab", version, about = "Boundary Harnack experiments on cones and Lipschitz domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Clone)]
struct Global {
    /// JSON experiment config (for `sweep`: a sweep config or a threshold-sweep experiment).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory, overriding `out_dir`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Grid width, overriding `grid`.
    #[arg(long, global = true)]
    h: Option<f64>,
    /// Random seed, overriding `analysis.seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Suppress the summary on stdout.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Homogeneity exponent of a sector or cone.
    Alpha,
    /// Solve the comparison pair u, v.
    Pair,
    /// Sup-ratio profile and dyadic increments.
    Ratio,
    /// Growth exponent at the vertex.
    Growth,
    /// Weiss energy trace.
    Weiss,
    /// Fredholm obstruction on the critical cap.
    Fredholm,
    /// Sampled Hölder seminorm of v/u.
    Holder,
    /// Subsequence construction for divergent series.
    Sumdiv,
    /// Hele-Shaw corner wetting.
    Heleshaw,
    /// Parameter sweep with an aggregated CSV.
    Sweep,
}

impl Command {
    fn experiment(self) -> Option<&'static str> {
        Some(match self {
            Command::Alpha => "alpha",
            Command::Pair => "pair",
            Command::Ratio => "ratio",
            Command::Growth => "growth",
            Command::Weiss => "weiss",
            Command::Fredholm => "fredholm",
            Command::Holder => "holder",
            Command::Sumdiv => "sumdiv",
            Command::Heleshaw => "heleshaw",
            Command::Sweep => return None,
        })
    }
}

fn read_json(path: &Option<PathBuf>) -> Result<Option<Value>, Error> {
    let Some(p) = path else { return Ok(None) };
    let text = std::fs::read_to_string(p)?;
    serde_json::from_str(&text).map(Some).map_err(|e| Error::InvalidConfig(format!("{}: {e}", p.display())))
}

fn apply_overrides(cfg: &mut Value, g: &Global) -> Result<(), Error> {
    if let Some(h) = g.h {
        set_path(cfg, "grid", serde_json::json!({ "h": h }))?;
    }
    if let Some(s) = g.seed {
        set_path(cfg, "analysis.seed", s.into())?;
    }
    if let Some(o) = &g.out {
        set_path(cfg, "out_dir", o.to_string_lossy().as_ref().into())?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Error> {
    runner::init_threads()?;
    let g = &cli.global;
    let raw = read_json(&g.config)?;
    let Some(name) = cli.command.experiment() else {
        let raw = raw.ok_or_else(|| Error::InvalidConfig("sweep needs --config".into()))?;
        if raw.get("parameters").is_some() {
            let mut cfg: SweepConfig =
                serde_json::from_value(raw).map_err(|e| Error::InvalidConfig(format!("sweep config: {e}")))?;
            let out = g.out.clone().or_else(|| cfg.out_dir.clone()).unwrap_or_else(|| PathBuf::from("out"));
            apply_overrides(&mut cfg.base, &Global { out: None, ..g.clone() })?;
            let cfg = SweepConfig::from_json(&serde_json::to_string(&cfg)?)?;
            let outcome = runner::sweep(&cfg, Some(&out))?;
            if !g.quiet {
                print!("{}", outcome.csv);
            }
            return Ok(());
        }
        return run_experiment(raw, "threshold-sweep", g);
    };
    let raw = raw.unwrap_or_else(|| serde_json::json!({ "experiment": name }));
    run_experiment(raw, name, g)
}

fn run_experiment(mut raw: Value, name: &str, g: &Global) -> Result<(), Error> {
    match raw.get("experiment").and_then(Value::as_str) {
        Some(e) if e != name => {
            return Err(Error::InvalidConfig(format!("config runs experiment {e:?}, subcommand asks for {name:?}")))
        }
        Some(_) => {}
        None => set_path(&mut raw, "experiment", name.into())?,
    }
    apply_overrides(&mut raw, g)?;
    let cfg = ExperimentConfig::from_value(raw)?;
    let out = runner::run(&cfg)?;
    if !g.quiet {
        println!("{}", serde_json::to_string_pretty(&out.outcome.summary)?);
        println!("wrote {} files to {}", out.manifest.files.len() + 1, out.out_dir.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("harnack-lab: {e}");
            ExitCode::from(runner::exit_code(&e) as u8)
        }
    }
}
