//! Sup-ratio profiles of the comparison pair on a wide and a narrow sector.
//! On the wide sector `v/u` stays bounded near the vertex; on the narrow one
//! it grows like `r^{2−α₁}`.

use std::f64::consts::PI;

use harnack_lab::analysis::{dyadic_increments, ratio_profile};
use harnack_lab::elliptic::solve_pair;
use harnack_lab::geometry::make_sector;
use harnack_lab::spectral::alpha_sector;

fn main() -> harnack_lab::Result<()> {
    let h = 1.0 / 128.0;
    for w in [3.0 * PI / 4.0, PI / 4.0] {
        let (u, v) = solve_pair(&make_sector(w)?, 0.0, h)?;
        let anchor = [0.0, 0.5, 0.0];
        let prof = ratio_profile(&u, &v, &anchor, 8)?;
        let a1 = alpha_sector(w, 1)?;
        println!("ω = {w:.4}  α₁ = {a1:.4}");
        for (r, q) in prof.radii.iter().zip(prof.normalized()) {
            println!("  r = {r:<10} sup(v/u)/anchor = {q:.4}");
        }
        println!("  spread = {:.3}  log₂ rate = {:?}", prof.spread(), prof.log2_rate(1.0));
        let inc = dyadic_increments(&u, &v, &anchor, a1, 12)?;
        println!("  partial sums of a_k: {:?}", inc.partial_sums());
    }
    Ok(())
}
