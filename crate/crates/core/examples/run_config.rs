//! Drive the experiment runner from a JSON config, as the `harnack-lab`
//! binary does, writing artifacts and a manifest.
//!
//! ```text
//! cargo run --example run_config -- configs/ratio_subcritical.json /tmp/out
//! ```

use std::path::PathBuf;

use harnack_lab::runner::{run, ExperimentConfig};

fn main() -> harnack_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/configs/alpha_sector.json").into());
    let mut cfg = ExperimentConfig::load(path.as_ref())?;
    if let Some(out) = args.next() {
        cfg.out_dir = Some(PathBuf::from(out));
    }
    let out = run(&cfg)?;
    println!("{}", serde_json::to_string_pretty(&out.outcome.summary)?);
    for f in &out.manifest.files {
        println!("{:<16} {:>8} bytes  {}", f.name, f.bytes, &f.sha256[..16]);
    }
    Ok(())
}
