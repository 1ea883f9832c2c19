//! Threshold verdicts on an aperture × γ grid of sectors.

use std::f64::consts::PI;

use harnack_lab::analysis::{threshold_verdict, Verdict};
use harnack_lab::spectral::alpha_sector;

fn main() -> harnack_lab::Result<()> {
    let gammas = [-1.0, -0.5, 0.0, 0.5, 1.0, 2.0];
    print!("{:>8}", "ω \\ γ");
    for g in gammas {
        print!("{g:>6}");
    }
    println!();
    for k in 1..=15 {
        let w = k as f64 * PI / 8.0;
        print!("{:>8.4}", w);
        let a = alpha_sector(w, 1)?;
        for g in gammas {
            let c = match threshold_verdict(a, g)? {
                Verdict::Bounded => "B",
                Verdict::Critical => "=",
                Verdict::Counterexample => "x",
            };
            print!("{c:>6}");
        }
        println!();
    }
    Ok(())
}
