//! Homogeneity exponents of sectors and right circular cones, and the
//! threshold verdict each one gives for a few right-hand-side powers.

use std::f64::consts::PI;

use harnack_lab::analysis::threshold_verdict;
use harnack_lab::spectral::{alpha_axisymmetric, alpha_sector, critical_aperture};

fn main() -> harnack_lab::Result<()> {
    println!("sectors:");
    for k in 1..=7 {
        let w = k as f64 * PI / 4.0;
        let a = alpha_sector(w, 1)?;
        println!("  ω = {k}π/4  α₁ = {a:.6}  γ=0: {:?}", threshold_verdict(a, 0.0)?);
    }

    println!("cones in R³:");
    for theta in [PI / 6.0, PI / 4.0, PI / 3.0, PI / 2.0, 2.0 * PI / 3.0] {
        let rep = alpha_axisymmetric(3, theta, 1)?;
        println!("  θ = {theta:.4}  α₁ = {:.6}  λ₁ = {:.6}", rep.alpha1, rep.lambda1);
    }

    for n in [3, 4, 5] {
        println!("critical half-aperture (α₁ = 2) in R^{n}: {:.8}", critical_aperture(n)?);
    }
    Ok(())
}
