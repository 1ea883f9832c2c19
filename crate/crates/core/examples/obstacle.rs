//! Obstacle problem on the disk with forcing `−1` inside `r < a` and `+1`
//! outside; the free boundary sits at `r = a√2`.

use std::sync::Arc;

use harnack_lab::elliptic::{solve_obstacle, PsorOptions};
use harnack_lab::geometry::{make_ball, rasterize};

fn main() -> harnack_lab::Result<()> {
    let a = 0.3;
    let grid = Arc::new(rasterize(&make_ball(2, 1.0)?, 1.0 / 64.0)?);
    let f: Vec<f64> = (0..grid.num_unknowns())
        .map(|k| {
            let x = grid.point(k);
            if x[0].hypot(x[1]) < a {
                -1.0
            } else {
                1.0
            }
        })
        .collect();
    let (u, stats) = solve_obstacle(grid.clone(), &f, PsorOptions::default(), None)?;
    let wet = (0..grid.num_unknowns()).filter(|&k| u.values[k] > 0.0).map(|k| {
        let x = grid.point(k);
        x[0].hypot(x[1])
    });
    let radius = wet.fold(0.0, f64::max);
    println!("PSOR: {} sweeps, ω = {:.4}, gap = {:.1e}", stats.iterations, stats.omega, stats.max_gap);
    println!("outermost positive cell at r = {radius:.4}, predicted {:.4}", a * 2f64.sqrt());
    Ok(())
}
