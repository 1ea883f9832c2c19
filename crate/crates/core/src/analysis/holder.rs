use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{admissible, check_shared, DEFAULT_MARGIN};
use crate::elliptic::ScalarField;
use crate::error::{invalid, Result};
use crate::geometry::norm;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolderEstimate {
    pub seminorm: f64,
    pub beta: f64,
    pub pair_budget: usize,
    pub pairs_evaluated: usize,
    pub seed: u64,
    /// Largest quotient seen in each separation class `[2^c h, 2^{c+1} h)`.
    pub by_separation: Vec<f64>,
}

/// Sampled `C^{0,β}` seminorm of `q = v/u` on admissible cells of `B_{1/2}`.
///
/// Pair `p` draws its separation from class `p mod C` of the dyadic classes
/// between `h` and `1/2`, so short and long separations get equal budget.
pub fn holder_quotient(
    u: &ScalarField,
    v: &ScalarField,
    beta: f64,
    pair_budget: usize,
    seed: u64,
) -> Result<HolderEstimate> {
    check_shared(u, v)?;
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(invalid("Hölder exponent must lie in (0, 1]"));
    }
    let g = &*u.grid;
    let cells: Vec<usize> = (0..g.num_unknowns())
        .filter(|&k| admissible(u, k, DEFAULT_MARGIN) && u.values[k] > 0.0 && norm(&g.point(k)[..g.dim]) < 0.5)
        .collect();
    let classes = ((0.5 / g.h).log2().floor() as usize).max(1);
    let mut est = HolderEstimate {
        seminorm: 0.0,
        beta,
        pair_budget,
        pairs_evaluated: 0,
        seed,
        by_separation: vec![0.0; classes],
    };
    if cells.len() < 2 {
        return Ok(est);
    }
    let q = |k: usize| v.values[k] / u.values[k];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for p in 0..pair_budget {
        let class = p % classes;
        let x = cells[rng.gen_range(0..cells.len())];
        let lo = g.h * 2f64.powi(class as i32);
        let dist = rng.gen_range(lo..2.0 * lo);
        let mut dir = [0.0; 3];
        loop {
            let mut s = 0.0f64;
            for d in dir.iter_mut().take(g.dim) {
                *d = rng.gen_range(-1.0..1.0);
                s += *d * *d;
            }
            if s > 1e-6 && s <= 1.0 {
                let s = s.sqrt();
                dir.iter_mut().for_each(|d| *d /= s);
                break;
            }
        }
        let px = g.point(x);
        let mut py = [0.0; 3];
        for d in 0..g.dim {
            py[d] = px[d] + dist * dir[d];
        }
        let Some(lin) = g.nearest_lattice(&py) else { continue };
        let Some(y) = g.unknown_at(lin) else { continue };
        if y == x || !admissible(u, y, DEFAULT_MARGIN) || !(u.values[y] > 0.0) {
            continue;
        }
        let py = g.point(y);
        let sep: f64 = (0..g.dim).map(|d| (px[d] - py[d]).powi(2)).sum::<f64>().sqrt();
        if norm(&py[..g.dim]) >= 0.5 {
            continue;
        }
        let quotient = (q(x) - q(y)).abs() / sep.powf(beta);
        est.pairs_evaluated += 1;
        est.seminorm = est.seminorm.max(quotient);
        let slot = &mut est.by_separation[class];
        *slot = slot.max(quotient);
    }
    Ok(est)
}
