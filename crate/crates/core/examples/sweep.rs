//! A γ sweep on the `3π/4` sector through the runner: one row per value,
//! verdicts flipping where `2 − α₁ + γ` changes sign.

use harnack_lab::runner::{sweep, SweepConfig};

fn main() -> harnack_lab::Result<()> {
    let cfg = SweepConfig::from_json(
        r#"{
            "base": {
                "experiment": "alpha",
                "domain": {"kind": "sector", "dim": 2, "aperture": 2.356194490192345}
            },
            "parameters": {"gamma": [-1.0, -0.5, 0.0, 0.5, 1.0]}
        }"#,
    )?;
    let out = sweep(&cfg, None)?;
    print!("{}", out.csv);
    Ok(())
}
