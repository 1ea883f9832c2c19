//! Weiss energy of the supersolution on the quarter plane, where
//! `α₁ = 2` and the energy is monotone in the radius.

use std::f64::consts::PI;

use harnack_lab::analysis::{weiss_at, weiss_trace};
use harnack_lab::elliptic::solve_pair;
use harnack_lab::geometry::make_sector;

fn main() -> harnack_lab::Result<()> {
    let (_, v) = solve_pair(&make_sector(PI / 2.0)?, 0.0, 1.0 / 128.0)?;
    let radii: Vec<f64> = (0..10).map(|k| 0.45 * 2f64.powf(-0.4 * k as f64)).collect();
    let trace = weiss_trace(&v, &radii)?;
    for (r, w) in trace.radii.iter().zip(&trace.w) {
        println!("r = {r:.5}  W = {w:.6}");
    }
    println!("smallest increment: {:.3e}", trace.min_increment());

    let r = 0.5;
    let vr = v.rescaled(r, 2.0)?;
    let rho = 0.4;
    println!(
        "W(ρr, v) = {:.12}  W(ρ, v_r) = {:.12}",
        weiss_at(&v, rho * r)?.unwrap(),
        weiss_at(&vr, rho)?.unwrap()
    );
    Ok(())
}
