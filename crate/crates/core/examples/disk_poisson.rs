//! Solver check on the unit disk: `Δu = −1`, `u = 0` on the circle, whose
//! exact solution is `(1 − |x|²)/4`.

use std::sync::Arc;

use harnack_lab::elliptic::{assemble, solve, CoefficientField, Dirichlet, RhsSpec};
use harnack_lab::geometry::{make_ball, rasterize};

fn main() -> harnack_lab::Result<()> {
    let disk = make_ball(2, 1.0)?;
    for h in [1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0] {
        let grid = Arc::new(rasterize(&disk, h)?);
        let sys = assemble(grid, &CoefficientField::identity(), &RhsSpec::constant(-1.0), Dirichlet::Zero)?;
        let u = solve(&sys, 1e-12)?;
        let err = u
            .values
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let x = u.grid.point(k);
                (v - (1.0 - x[0] * x[0] - x[1] * x[1]) / 4.0).abs()
            })
            .fold(0.0, f64::max);
        println!("h = {h:<9} unknowns = {:>6}  u(0) = {:.12}  max error = {err:.2e}", sys.n(), u.interpolate(&[0.0; 3]));
    }
    Ok(())
}
