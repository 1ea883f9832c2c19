//! The pair for a checkerboard divergence-form operator with absorption on
//! the `3π/4` sector: both solutions stay in `[0, sup data]`, `u ≤ v`, and
//! the ratio profile stays bounded.

use std::f64::consts::PI;

use harnack_lab::analysis::ratio_profile;
use harnack_lab::elliptic::{solve_pair_with, CoefficientField, PairOptions};
use harnack_lab::geometry::make_sector;

fn main() -> harnack_lab::Result<()> {
    let spec = make_sector(3.0 * PI / 4.0)?;
    for c in [0.0, -0.5] {
        let mut opts = PairOptions::new(0.0, 1.0 / 128.0);
        opts.coefficients = CoefficientField::checkerboard(1.0 / 8.0, 0.5, 2.0, [0.0; 3], c)?;
        let (u, v) = solve_pair_with(&spec, &opts)?;
        let ordered = u.values.iter().zip(&v.values).all(|(a, b)| *a <= *b + 1e-10);
        let prof = ratio_profile(&u, &v, &[0.0, 0.5, 0.0], 8)?;
        println!("c = {c}: max u = {:.4}, u ≤ v: {ordered}, spread = {:.3}", u.max_abs(), prof.spread());
    }
    Ok(())
}
