//! Fit `sup_{B_r(0)} u ≈ C r^α` for the harmonic function of a sector and
//! compare with `π/ω`.

use std::f64::consts::PI;
use std::sync::Arc;

use harnack_lab::analysis::growth_exponent;
use harnack_lab::elliptic::{assemble, solve, CoefficientField, Dirichlet, RhsSpec};
use harnack_lab::geometry::{make_sector, rasterize};

fn main() -> harnack_lab::Result<()> {
    let h = 1.0 / 256.0;
    for w in [PI / 3.0, PI / 2.0, 3.0 * PI / 4.0, 3.0 * PI / 2.0] {
        let grid = Arc::new(rasterize(&make_sector(w)?, h)?);
        let sys = assemble(grid, &CoefficientField::identity(), &RhsSpec::zero(), Dirichlet::lateral_outer(0.0, 1.0))?;
        let u = solve(&sys, 1e-10)?;
        let fit = growth_exponent(&u, &[0.0; 3], 8)?;
        println!(
            "ω = {w:.4}  fitted α = {:.4}  π/ω = {:.4}  rms = {:.1e}",
            fit.fitted_exponent,
            PI / w,
            fit.residual
        );
    }
    Ok(())
}
