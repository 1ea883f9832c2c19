//! Quantities measured on solved fields: ratio profiles, growth exponents,
//! dyadic increments, Weiss energies, Hölder quotients, the threshold verdict
//! and the subsequence construction for divergent series.

mod holder;
mod sumdiv;
mod weiss;

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::elliptic::ScalarField;
use crate::error::{invalid, Error, Result};
use crate::geometry::norm;

pub use holder::{holder_quotient, HolderEstimate};
pub use sumdiv::{sumdiv_subsequence, SumDivCase, SumDivResult};
pub use weiss::{weiss_at, weiss_trace, WeissTrace};

/// Cells closer than this many grid widths to the boundary are skipped.
pub const DEFAULT_MARGIN: f64 = 2.0;

/// Smallest radius, in grid widths, that counts as resolved.
pub const MIN_RADIUS_CELLS: f64 = 8.0;

pub(crate) fn admissible(field: &ScalarField, u: usize, margin: f64) -> bool {
    let g = &*field.grid;
    -g.region.signed_distance(&g.point(u)[..g.dim]) >= margin * g.h
}

fn check_shared(u: &ScalarField, v: &ScalarField) -> Result<()> {
    if !u.grid.same_lattice(&v.grid) {
        return Err(invalid("fields live on different grids"));
    }
    Ok(())
}

/// Sup of `v/u` over dyadic annuli `2^{−j−1} < |x| ≤ 2^{−j}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioProfile {
    /// Outer radius of each kept annulus, strictly decreasing.
    pub radii: Vec<f64>,
    pub sup_ratio: Vec<f64>,
    pub anchor: [f64; 3],
    pub anchor_ratio: f64,
    pub margin: f64,
    /// Levels dropped for lack of admissible cells.
    pub dropped: Vec<usize>,
    pub h: f64,
}

impl RatioProfile {
    /// `sup_ratio / anchor_ratio` per level.
    pub fn normalized(&self) -> Vec<f64> {
        self.sup_ratio.iter().map(|s| s / self.anchor_ratio).collect()
    }

    /// Largest over smallest normalized value.
    pub fn spread(&self) -> f64 {
        let n = self.normalized();
        let max = n.iter().cloned().fold(f64::MIN, f64::max);
        let min = n.iter().cloned().fold(f64::MAX, f64::min);
        max / min
    }

    /// Least-squares slope of `log₂ sup_ratio` against the level index,
    /// over the annuli inside `B_{R/4}` (the outer levels still feel the
    /// data on `∂B_R`). `None` with fewer than two such levels.
    pub fn log2_rate(&self, domain_radius: f64) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .radii
            .iter()
            .zip(&self.sup_ratio)
            .filter(|(r, _)| **r <= 0.25 * domain_radius * (1.0 + 1e-12))
            .map(|(r, s)| (-r.log2(), s.log2()))
            .collect();
        (pts.len() >= 2).then(|| least_squares(&pts).0)
    }

    pub fn write_csv<W: Write>(&self, mut out: W, experiment: &str) -> Result<()> {
        writeln!(out, "# experiment={experiment} h={}", self.h)?;
        writeln!(out, "r,value")?;
        for (r, s) in self.radii.iter().zip(&self.sup_ratio) {
            writeln!(out, "{r:.17e},{s:.17e}")?;
        }
        Ok(())
    }
}

/// Dyadic levels `j = 1..=levels` whose annulus has inner radius at least
/// eight grid widths.
fn resolved_levels(h: f64, levels: usize) -> Vec<usize> {
    (1..=levels).filter(|&j| 0.5f64.powi(j as i32 + 1) >= MIN_RADIUS_CELLS * h).collect()
}

pub fn ratio_profile(u: &ScalarField, v: &ScalarField, anchor: &[f64], levels: usize) -> Result<RatioProfile> {
    ratio_profile_with_margin(u, v, anchor, levels, DEFAULT_MARGIN)
}

pub fn ratio_profile_with_margin(
    u: &ScalarField,
    v: &ScalarField,
    anchor: &[f64],
    levels: usize,
    margin: f64,
) -> Result<RatioProfile> {
    check_shared(u, v)?;
    let g = &*u.grid;
    let mut a = [0.0; 3];
    a[..g.dim].copy_from_slice(&anchor[..g.dim]);
    if -g.region.signed_distance(&a[..g.dim]) < margin * g.h {
        return Err(invalid("anchor is not admissible"));
    }
    let ua = u.interpolate(&a);
    if !(ua > 0.0) {
        return Err(invalid("u must be positive at the anchor"));
    }
    let anchor_ratio = v.interpolate(&a) / ua;
    let lv = resolved_levels(g.h, levels);
    let mut sup = vec![f64::NEG_INFINITY; lv.len()];
    for k in 0..g.num_unknowns() {
        if !admissible(u, k, margin) || !(u.values[k] > 0.0) {
            continue;
        }
        let r = norm(&g.point(k)[..g.dim]);
        if r <= 0.0 {
            continue;
        }
        // annulus 2^{-j-1} < r ≤ 2^{-j}
        let j = (-r.log2()).floor() as i64;
        let j = if 0.5f64.powi(j as i32) < r { j - 1 } else { j };
        if let Some(pos) = lv.iter().position(|&l| l as i64 == j) {
            let q = v.values[k] / u.values[k];
            if q > sup[pos] {
                sup[pos] = q;
            }
        }
    }
    let mut out = RatioProfile {
        radii: vec![],
        sup_ratio: vec![],
        anchor: a,
        anchor_ratio,
        margin,
        dropped: vec![],
        h: g.h,
    };
    for (pos, &j) in lv.iter().enumerate() {
        if sup[pos].is_finite() {
            out.radii.push(0.5f64.powi(j as i32));
            out.sup_ratio.push(sup[pos]);
        } else {
            out.dropped.push(j);
        }
    }
    Ok(out)
}

/// Fit of `sup_{B_r(center)} u ≈ C r^α`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub fitted_exponent: f64,
    /// The prefactor `C`.
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
    pub fit_range: [f64; 2],
    pub samples: Vec<(f64, f64)>,
}

/// Growth of `sup_{B_r(center)} u` over radii `2^{−j−2}`, `j = 0..levels`,
/// down to eight grid widths.
pub fn growth_exponent(u: &ScalarField, center: &[f64], levels: usize) -> Result<GrowthFit> {
    let g = &*u.grid;
    let radii: Vec<f64> =
        (0..levels).map(|j| 0.25 * 0.5f64.powi(j as i32)).filter(|&r| r >= MIN_RADIUS_CELLS * g.h).collect();
    if radii.len() < 4 {
        return Err(Error::InsufficientResolution(format!(
            "only {} dyadic radii between 8h and 1/4",
            radii.len()
        )));
    }
    let mut sups = vec![0.0f64; radii.len()];
    for k in 0..g.num_unknowns() {
        let x = g.point(k);
        let d: f64 = (0..g.dim).map(|i| (x[i] - center[i]).powi(2)).sum::<f64>().sqrt();
        for (s, &r) in sups.iter_mut().zip(&radii) {
            if d <= r {
                *s = s.max(u.values[k]);
            }
        }
    }
    if sups.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::InsufficientResolution("u vanishes on a sampled ball".into()));
    }
    let samples: Vec<(f64, f64)> = radii.iter().cloned().zip(sups.iter().cloned()).collect();
    let pts: Vec<(f64, f64)> = samples.iter().map(|(r, s)| (r.ln(), s.ln())).collect();
    let (slope, icpt, rms) = least_squares(&pts);
    Ok(GrowthFit {
        fitted_exponent: slope,
        intercept: icpt.exp(),
        residual: rms,
        fit_range: [*radii.last().unwrap(), radii[0]],
        samples,
    })
}

/// Unweighted least squares `y ≈ a x + b`; returns `(a, b, rms residual)`.
pub fn least_squares(pts: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let a = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let b = my - a * mx;
    let rms = (pts.iter().map(|p| (p.1 - a * p.0 - b).powi(2)).sum::<f64>() / n).sqrt();
    (a, b, rms)
}

/// `a_k = 2^{kα₁} · sup_{B_{2^{−k}}} |v − q_k u|` with `q_k = v/u` at `2^{−k}x⁰`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DyadicIncrements {
    pub levels: Vec<usize>,
    pub a: Vec<f64>,
    pub alpha1: f64,
}

impl DyadicIncrements {
    pub fn partial_sums(&self) -> Vec<f64> {
        self.a
            .iter()
            .scan(0.0, |s, &a| {
                *s += a;
                Some(*s)
            })
            .collect()
    }

    /// First level index `k ≥ 1` at which the next term adds less than
    /// `rel` of the running sum, if any.
    pub fn plateau(&self, rel: f64) -> Option<usize> {
        let s = self.partial_sums();
        (1..self.a.len()).find(|&k| self.a[k] < rel * s[k - 1])
    }
}

pub fn dyadic_increments(
    u: &ScalarField,
    v: &ScalarField,
    anchor: &[f64],
    alpha1: f64,
    levels: usize,
) -> Result<DyadicIncrements> {
    check_shared(u, v)?;
    if !(alpha1 > 0.0) {
        return Err(invalid("exponent must be positive"));
    }
    let g = &*u.grid;
    let r0 = norm(&anchor[..g.dim]);
    let mut out = DyadicIncrements { levels: vec![], a: vec![], alpha1 };
    for k in 0..levels {
        let s = 0.5f64.powi(k as i32);
        if s * r0 < MIN_RADIUS_CELLS * g.h {
            break;
        }
        let mut x = [0.0; 3];
        for d in 0..g.dim {
            x[d] = s * anchor[d];
        }
        let ua = u.interpolate(&x);
        if !(ua > 0.0) {
            break;
        }
        let q = v.interpolate(&x) / ua;
        let mut sup = 0.0f64;
        for c in 0..g.num_unknowns() {
            if norm(&g.point(c)[..g.dim]) < s {
                sup = sup.max((v.values[c] - q * u.values[c]).abs());
            }
        }
        out.levels.push(k);
        out.a.push(sup * 2f64.powf(k as f64 * alpha1));
    }
    if out.a.is_empty() {
        return Err(Error::InsufficientResolution("no resolved dyadic level".into()));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Bounded,
    Critical,
    Counterexample,
}

/// Sign of `2 − α₁ + γ`, with `|·| ≤ 1e−9` reported as critical.
pub fn threshold_verdict(alpha1: f64, gamma: f64) -> Result<Verdict> {
    if !(alpha1 > 0.0) || !gamma.is_finite() {
        return Err(invalid("exponent must be positive and γ finite"));
    }
    let s = 2.0 - alpha1 + gamma;
    Ok(if s.abs() <= 1e-9 {
        Verdict::Critical
    } else if s > 0.0 {
        Verdict::Bounded
    } else {
        Verdict::Counterexample
    })
}
