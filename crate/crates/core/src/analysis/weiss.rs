use std::f64::consts::PI;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::MIN_RADIUS_CELLS;
use crate::elliptic::ScalarField;
use crate::error::{invalid, Result};
use crate::geometry::{norm, GridDomain};

/// `W(r, v) = r^{−n−2} ∫_{B_r∩C} (|∇v|² − 2v) − 2 r^{−n−3} ∫_{∂B_r∩C} v²`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeissTrace {
    pub radii: Vec<f64>,
    #[serde(rename = "W")]
    pub w: Vec<f64>,
    pub quadrature_h: f64,
    /// Requested radii outside `[8h, R/2)`.
    pub dropped: Vec<f64>,
}

impl WeissTrace {
    /// Smallest `W(r_{i+1}) − W(r_i)` over consecutive kept radii.
    pub fn min_increment(&self) -> f64 {
        self.w.windows(2).map(|p| p[1] - p[0]).fold(f64::INFINITY, f64::min)
    }

    pub fn is_nondecreasing(&self, eps: f64) -> bool {
        self.min_increment() >= -eps
    }

    pub fn write_csv<W: Write>(&self, mut out: W, experiment: &str) -> Result<()> {
        writeln!(out, "# experiment={experiment} h={}", self.quadrature_h)?;
        writeln!(out, "r,value")?;
        for (r, w) in self.radii.iter().zip(&self.w) {
            writeln!(out, "{r:.17e},{w:.17e}")?;
        }
        Ok(())
    }
}

/// Weiss energy at one radius, or `None` when `r` is not resolved.
///
/// The bulk term is a midpoint sum over cells with `|x| < r` using
/// centered-difference gradients; the sphere term is a trapezoid rule in the
/// polar angle (and azimuth in three dimensions) on multilinear
/// interpolants.
pub fn weiss_at(v: &ScalarField, r: f64) -> Result<Option<f64>> {
    let g = &*v.grid;
    let spec = g.spec();
    if !spec.is_conical() {
        return Err(invalid("the Weiss energy needs a cone or sector grid"));
    }
    if r < MIN_RADIUS_CELLS * g.h || r >= spec.radius() / 2.0 {
        return Ok(None);
    }
    let n = g.dim as i32;
    let integrand: Vec<f64> = (0..g.num_unknowns())
        .map(|u| {
            let grad = v.gradient(u);
            grad[..g.dim].iter().map(|a| a * a).sum::<f64>() - 2.0 * v.values[u]
        })
        .collect();
    let bulk: f64 = bulk_weights(g, r).iter().map(|&(u, w)| w * integrand[u]).sum();
    let half = spec.half_aperture();
    let m = ((4.0 * r * 2.0 * half / g.h).ceil() as usize).max(64);
    let sphere = if g.dim == 2 {
        let dt = 2.0 * half / m as f64;
        let mut s = 0.0;
        for i in 0..=m {
            let t = -half + i as f64 * dt;
            let w = if i == 0 || i == m { 0.5 } else { 1.0 };
            let val = v.interpolate_interior(&[r * t.sin(), r * t.cos()]);
            s += w * val * val;
        }
        s * dt * r
    } else {
        let m = m / 2 + 1;
        let dt = half / m as f64;
        let p = ((4.0 * r * 2.0 * PI * half.sin().min(1.0) / g.h).ceil() as usize).max(32);
        let dp = 2.0 * PI / p as f64;
        let mut s = 0.0;
        for i in 0..=m {
            let t = i as f64 * dt;
            let w = if i == 0 || i == m { 0.5 } else { 1.0 };
            let mut ring = 0.0;
            for k in 0..p {
                let ph = k as f64 * dp;
                let val = v.interpolate_interior(&[r * t.sin() * ph.cos(), r * t.sin() * ph.sin(), r * t.cos()]);
                ring += val * val;
            }
            s += w * ring * dp * t.sin();
        }
        s * dt * r * r
    };
    Ok(Some(bulk / r.powi(n + 2) - 2.0 * sphere / r.powi(n + 3)))
}

/// Energies at `radii`, kept in increasing order of radius.
pub fn weiss_trace(v: &ScalarField, radii: &[f64]) -> Result<WeissTrace> {
    if radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(invalid("radii must be positive"));
    }
    let mut sorted = radii.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut out = WeissTrace { radii: vec![], w: vec![], quadrature_h: v.grid.h, dropped: vec![] };
    for r in sorted {
        match weiss_at(v, r)? {
            Some(w) => {
                out.radii.push(r);
                out.w.push(w);
            }
            None => out.dropped.push(r),
        }
    }
    Ok(out)
}

const SUBSAMPLES: usize = 8;

/// Volume of `Ω ∩ B_r` attributed to each unknown: the part of its cell box,
/// plus boundary slivers whose nearest lattice node lies outside, credited to
/// the nearest unknown. Boxes crossing `∂Ω` or `∂B_r` are subsampled.
fn bulk_weights(g: &GridDomain, r: f64) -> Vec<(usize, f64)> {
    let h = g.h;
    let reach = 0.5 * h * (g.dim as f64).sqrt();
    let inside = |p: &[f64]| g.region.signed_distance(&p[..g.dim]) < 0.0 && norm(&p[..g.dim]) < r;
    let mut out = Vec::new();
    let mut boxes: Vec<usize> = Vec::new();
    for u in 0..g.num_unknowns() {
        let x = g.point(u);
        let rx = norm(&x[..g.dim]);
        if rx > r + 2.0 * h {
            continue;
        }
        let deep = -g.region.signed_distance(&x[..g.dim]) > reach;
        if deep && rx + reach < r {
            out.push((u, g.cell_volume()));
        } else {
            boxes.push(g.lattice_of(u));
        }
        for dir in 0..2 * g.dim {
            if let Some(n) = g.neighbor(g.lattice_of(u), dir) {
                if g.unknown_at(n).is_none() {
                    boxes.push(n);
                }
            }
        }
    }
    boxes.sort_unstable();
    boxes.dedup();
    let m = SUBSAMPLES;
    let sub = h / m as f64;
    let dv = sub.powi(g.dim as i32);
    let count = m.pow(g.dim as u32);
    for lin in boxes {
        let c = g.lattice_point(lin);
        let mut acc: Vec<(usize, f64)> = Vec::new();
        for s in 0..count {
            let mut p = c;
            let mut rest = s;
            for d in 0..g.dim {
                let i = rest % m;
                rest /= m;
                p[d] += -0.5 * h + (i as f64 + 0.5) * sub;
            }
            if !inside(&p) {
                continue;
            }
            if let Some(u) = nearest_unknown(g, lin, &p) {
                match acc.iter_mut().find(|e| e.0 == u) {
                    Some(e) => e.1 += dv,
                    None => acc.push((u, dv)),
                }
            }
        }
        out.extend(acc);
    }
    out
}

fn nearest_unknown(g: &GridDomain, lin: usize, p: &[f64; 3]) -> Option<usize> {
    if let Some(u) = g.unknown_at(lin) {
        return Some(u);
    }
    let c = g.lattice_coords(lin);
    let span = if g.dim == 3 { 1 } else { 0 };
    let mut best: Option<(f64, usize)> = None;
    for dk in -span..=span {
        for dj in -1..=1i64 {
            for di in -1..=1i64 {
                let Some(n) = g.lattice_index([c[0] + di, c[1] + dj, c[2] + dk]) else { continue };
                let Some(u) = g.unknown_at(n) else { continue };
                let x = g.point(u);
                let d: f64 = (0..g.dim).map(|i| (x[i] - p[i]).powi(2)).sum();
                if best.is_none_or(|b| d < b.0) {
                    best = Some((d, u));
                }
            }
        }
    }
    best.map(|b| b.1)
}
