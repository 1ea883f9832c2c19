//! Sampled Hölder seminorm of `v/u` on a sector below the threshold.

use std::f64::consts::PI;

use harnack_lab::analysis::holder_quotient;
use harnack_lab::elliptic::solve_pair;
use harnack_lab::geometry::make_sector;

fn main() -> harnack_lab::Result<()> {
    let (u, v) = solve_pair(&make_sector(3.0 * PI / 4.0)?, 0.0, 1.0 / 64.0)?;
    for beta in [0.25, 0.5, 1.0] {
        let est = holder_quotient(&u, &v, beta, 20_000, 7)?;
        println!("β = {beta}  seminorm ≈ {:.4}  ({} pairs)", est.seminorm, est.pairs_evaluated);
    }
    Ok(())
}
