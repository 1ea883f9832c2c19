//! The pair on the domain above the wedge graph `x₂ = 0.5|x₁|`: the ratio
//! profile stays bounded and the growth exponent at the vertex matches the
//! sector of opening `π − 2 atan 0.5`.

use harnack_lab::analysis::{growth_exponent, ratio_profile};
use harnack_lab::elliptic::solve_pair;
use harnack_lab::geometry::make_lipschitz_graph;
use harnack_lab::spectral::alpha_sector;

fn main() -> harnack_lab::Result<()> {
    let spec = make_lipschitz_graph(&[[-1.0, 0.5], [0.0, 0.0], [1.0, 0.5]], 1.0)?;
    let (u, v) = solve_pair(&spec, 0.0, 1.0 / 256.0)?;
    let prof = ratio_profile(&u, &v, &[0.0, 0.5, 0.0], 8)?;
    println!("normalized profile: {:?}", prof.normalized());
    println!("spread: {:.3}", prof.spread());
    let fit = growth_exponent(&u, &[0.0; 3], 8)?;
    let cone = alpha_sector(std::f64::consts::PI - 2.0 * 0.5f64.atan(), 1)?;
    println!("growth exponent {:.4} vs matching sector {:.4}", fit.fitted_exponent, cone);
    Ok(())
}
