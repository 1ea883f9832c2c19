//! Symbolic domains and their rasterization.
//!
//! A [`DomainSpec`] describes one of the model domains: a planar sector with
//! vertex at the origin, a right circular cone `{x_n > L|x'|}`, the region
//! above a piecewise-linear Lipschitz graph, or (for solver tests and
//! Hele-Shaw tables) a ball or a polygon. Sectors, cones and graph domains are
//! intersected with the ball `B_R` when rasterized; [`DomainSpec::signed_distance`]
//! itself measures the distance to the lateral boundary only, which is what the
//! `dist(x, ∂Ω)` weights need.

mod grid;

pub use grid::{rasterize, rasterize_region, CellKind, GridDomain};

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Cells whose center is this close to the boundary count as exterior.
pub const BOUNDARY_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainKind {
    Sector,
    Cone,
    LipschitzGraph,
    Ball,
    Polygon,
}

/// JSON layout: `{"kind", "dim", "aperture", "slope", "vertices", "radius"}`.
/// Fields that do not apply to `kind` are `null`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDomainSpec {
    kind: DomainKind,
    dim: usize,
    #[serde(default)]
    aperture: Option<f64>,
    #[serde(default)]
    slope: Option<f64>,
    #[serde(default)]
    vertices: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    radius: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDomainSpec", into = "RawDomainSpec")]
pub struct DomainSpec {
    kind: DomainKind,
    dim: usize,
    aperture: Option<f64>,
    slope: Option<f64>,
    vertices: Option<Vec<[f64; 2]>>,
    radius: f64,
}

impl TryFrom<RawDomainSpec> for DomainSpec {
    type Error = Error;

    fn try_from(raw: RawDomainSpec) -> Result<Self> {
        let radius = raw.radius.unwrap_or(1.0);
        let spec = match raw.kind {
            DomainKind::Sector => {
                if raw.dim != 2 {
                    return Err(invalid("sector requires dim = 2"));
                }
                let ap = raw.aperture.ok_or_else(|| invalid("sector needs aperture"))?;
                make_sector(ap)?.with_radius(radius)?
            }
            DomainKind::Cone => match (raw.slope, raw.aperture) {
                (Some(l), Some(a)) => {
                    let c = make_cone(raw.dim, l)?;
                    if (c.half_aperture() - a).abs() > 1e-9 {
                        return Err(invalid("cone slope and aperture disagree"));
                    }
                    c.with_radius(radius)?
                }
                (Some(l), None) => make_cone(raw.dim, l)?.with_radius(radius)?,
                (None, Some(a)) => make_cone_aperture(raw.dim, a)?.with_radius(radius)?,
                (None, None) => return Err(invalid("cone needs slope or aperture")),
            },
            DomainKind::LipschitzGraph => {
                let v = raw.vertices.ok_or_else(|| invalid("graph needs vertices"))?;
                let g = make_lipschitz_graph(&v, radius)?;
                if let Some(l) = raw.slope {
                    if (l - g.slope.unwrap_or(0.0)).abs() > 1e-9 {
                        return Err(invalid("declared slope differs from the graph's Lipschitz constant"));
                    }
                }
                g
            }
            DomainKind::Ball => make_ball(raw.dim, radius)?,
            DomainKind::Polygon => {
                let v = raw.vertices.ok_or_else(|| invalid("polygon needs vertices"))?;
                make_polygon(&v)?
            }
        };
        Ok(spec)
    }
}

impl From<DomainSpec> for RawDomainSpec {
    fn from(s: DomainSpec) -> Self {
        RawDomainSpec {
            kind: s.kind,
            dim: s.dim,
            aperture: s.aperture,
            slope: s.slope,
            vertices: s.vertices,
            radius: Some(s.radius),
        }
    }
}

/// Planar sector with vertex at the origin, bisector along `+x₂` and full
/// opening angle `opening`.
pub fn make_sector(opening: f64) -> Result<DomainSpec> {
    if !(opening > 0.0 && opening < 2.0 * PI) {
        return Err(invalid(format!("sector opening {opening} outside (0, 2π)")));
    }
    Ok(DomainSpec {
        kind: DomainKind::Sector,
        dim: 2,
        aperture: Some(opening),
        slope: None,
        vertices: None,
        radius: 1.0,
    })
}

/// Cone `C_L = {x_n > L|x'|}`; its half-aperture is `π/2 − arctan L`.
pub fn make_cone(dim: usize, slope: f64) -> Result<DomainSpec> {
    if dim < 2 {
        return Err(invalid("cone requires dim >= 2"));
    }
    if !slope.is_finite() {
        return Err(invalid("cone slope must be finite"));
    }
    Ok(DomainSpec {
        kind: DomainKind::Cone,
        dim,
        aperture: Some(PI / 2.0 - slope.atan()),
        slope: Some(slope),
        vertices: None,
        radius: 1.0,
    })
}

/// Cone given by its half-aperture `θ_c ∈ (0, π)` around `+x_n`.
pub fn make_cone_aperture(dim: usize, half_aperture: f64) -> Result<DomainSpec> {
    if !(half_aperture > 0.0 && half_aperture < PI) {
        return Err(invalid(format!("half-aperture {half_aperture} outside (0, π)")));
    }
    make_cone(dim, (PI / 2.0 - half_aperture).tan()).map(|mut c| {
        c.aperture = Some(half_aperture);
        c
    })
}

/// Region above the piecewise-linear interpolant of `vertices`, intersected
/// with `B_radius`. The graph must pass through the origin.
pub fn make_lipschitz_graph(vertices: &[[f64; 2]], radius: f64) -> Result<DomainSpec> {
    if vertices.len() < 2 {
        return Err(invalid("graph needs at least two vertices"));
    }
    let mut v = vertices.to_vec();
    v.sort_by(|a, b| a[0].total_cmp(&b[0]));
    if v.windows(2).any(|w| w[1][0] - w[0][0] <= 0.0) {
        return Err(invalid("graph abscissae must be distinct"));
    }
    if !v.iter().any(|p| p[0] == 0.0 && p[1] == 0.0) {
        return Err(invalid("graph must contain the origin sample (0, 0)"));
    }
    let slope = v
        .windows(2)
        .map(|w| ((w[1][1] - w[0][1]) / (w[1][0] - w[0][0])).abs())
        .fold(0.0, f64::max);
    if !slope.is_finite() {
        return Err(invalid("graph Lipschitz constant is not finite"));
    }
    DomainSpec {
        kind: DomainKind::LipschitzGraph,
        dim: 2,
        aperture: None,
        slope: Some(slope),
        vertices: Some(v),
        radius: 1.0,
    }
    .with_radius(radius)
}

pub fn make_ball(dim: usize, radius: f64) -> Result<DomainSpec> {
    if !(2..=3).contains(&dim) {
        return Err(invalid("ball supports dim 2 or 3"));
    }
    DomainSpec {
        kind: DomainKind::Ball,
        dim,
        aperture: None,
        slope: None,
        vertices: None,
        radius: 1.0,
    }
    .with_radius(radius)
}

/// Simple planar polygon (either orientation).
pub fn make_polygon(vertices: &[[f64; 2]]) -> Result<DomainSpec> {
    if vertices.len() < 3 {
        return Err(invalid("polygon needs at least three vertices"));
    }
    let area2: f64 = (0..vertices.len())
        .map(|i| {
            let a = vertices[i];
            let b = vertices[(i + 1) % vertices.len()];
            a[0] * b[1] - a[1] * b[0]
        })
        .sum();
    if area2.abs() < 1e-14 {
        return Err(invalid("degenerate polygon"));
    }
    let radius = vertices
        .iter()
        .map(|p| p[0].hypot(p[1]))
        .fold(0.0, f64::max);
    Ok(DomainSpec {
        kind: DomainKind::Polygon,
        dim: 2,
        aperture: None,
        slope: None,
        vertices: Some(vertices.to_vec()),
        radius,
    })
}

/// Which part of the boundary a boundary point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryPart {
    /// Cone/sector sides, the graph, the polygon edges.
    Lateral,
    /// The sphere `∂B_R`.
    Outer,
    /// A clipping ball added by [`Region::clipped`].
    Clip,
}

impl DomainSpec {
    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Lipschitz constant / cone slope, when the kind carries one.
    pub fn slope(&self) -> Option<f64> {
        self.slope
    }

    pub fn vertices(&self) -> Option<&[[f64; 2]]> {
        self.vertices.as_deref()
    }

    /// Stored aperture: full opening for sectors, half-aperture for cones.
    pub fn aperture(&self) -> Option<f64> {
        self.aperture
    }

    /// Half of the opening angle for sectors and cones (in any dimension).
    pub fn half_aperture(&self) -> f64 {
        match self.kind {
            DomainKind::Sector => self.aperture.unwrap_or(PI) / 2.0,
            DomainKind::Cone => self.aperture.unwrap_or(PI / 2.0),
            _ => f64::NAN,
        }
    }

    /// True for domains invariant under dilation about the origin.
    pub fn is_conical(&self) -> bool {
        matches!(self.kind, DomainKind::Sector | DomainKind::Cone)
    }

    pub fn with_radius(mut self, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(invalid("radius must be positive"));
        }
        if self.kind != DomainKind::Polygon {
            self.radius = radius;
        }
        Ok(self)
    }

    /// Signed distance to the lateral boundary: negative inside, positive
    /// outside. Sectors, cones (through their meridian) and graphs are
    /// treated as unbounded; balls and polygons use their own boundary.
    pub fn signed_distance(&self, x: &[f64]) -> f64 {
        match self.kind {
            DomainKind::Sector | DomainKind::Cone => {
                let (p, q) = if self.dim == 2 {
                    (x[0], x[1])
                } else {
                    let rho = x[..self.dim - 1].iter().map(|c| c * c).sum::<f64>().sqrt();
                    (rho, x[self.dim - 1])
                };
                wedge_signed_distance(p, q, self.half_aperture())
            }
            DomainKind::LipschitzGraph => graph_signed_distance(self.vertices.as_ref().unwrap(), x),
            DomainKind::Ball => norm(&x[..self.dim]) - self.radius,
            DomainKind::Polygon => polygon_signed_distance(self.vertices.as_ref().unwrap(), x),
        }
    }

    /// Signed distance of the bounded region that gets rasterized.
    pub fn region_distance(&self, x: &[f64]) -> f64 {
        match self.kind {
            DomainKind::Ball | DomainKind::Polygon => self.signed_distance(x),
            _ => self.signed_distance(x).max(norm(&x[..self.dim]) - self.radius),
        }
    }

    pub fn boundary_part(&self, x: &[f64]) -> BoundaryPart {
        match self.kind {
            DomainKind::Ball => BoundaryPart::Outer,
            DomainKind::Polygon => BoundaryPart::Lateral,
            _ => {
                if norm(&x[..self.dim]) - self.radius > self.signed_distance(x) {
                    BoundaryPart::Outer
                } else {
                    BoundaryPart::Lateral
                }
            }
        }
    }

    /// Axis-aligned box containing the rasterized region (unused axes are 0).
    pub fn bounding_box(&self) -> ([f64; 3], [f64; 3]) {
        let r = self.radius;
        let mut lo = [0.0; 3];
        let mut hi = [0.0; 3];
        match self.kind {
            DomainKind::Sector | DomainKind::Cone if self.dim == 2 => {
                let half = self.half_aperture();
                let mut pts = vec![[0.0, 0.0], [r * half.sin(), r * half.cos()], [-r * half.sin(), r * half.cos()]];
                // axis directions at angle 0 (bisector), ±π/2, π from the bisector
                pts.push([0.0, r]);
                if half > PI / 2.0 {
                    pts.push([r, 0.0]);
                    pts.push([-r, 0.0]);
                }
                for p in pts {
                    for d in 0..2 {
                        lo[d] = f64::min(lo[d], p[d]);
                        hi[d] = f64::max(hi[d], p[d]);
                    }
                }
                if half > PI * 0.999_999 {
                    lo[1] = -r;
                }
            }
            DomainKind::Cone => {
                let half = self.half_aperture();
                let rho = if half >= PI / 2.0 { r } else { r * half.sin() };
                for d in 0..self.dim - 1 {
                    lo[d] = -rho;
                    hi[d] = rho;
                }
                let n = self.dim - 1;
                lo[n] = (r * half.cos()).min(0.0);
                hi[n] = r;
            }
            DomainKind::Polygon => {
                let v = self.vertices.as_ref().unwrap();
                lo = [f64::INFINITY, f64::INFINITY, 0.0];
                hi = [f64::NEG_INFINITY, f64::NEG_INFINITY, 0.0];
                for p in v {
                    for d in 0..2 {
                        lo[d] = lo[d].min(p[d]);
                        hi[d] = hi[d].max(p[d]);
                    }
                }
            }
            _ => {
                for d in 0..self.dim {
                    lo[d] = -r;
                    hi[d] = r;
                }
            }
        }
        (lo, hi)
    }
}

/// A domain optionally intersected with an extra ball, e.g. `B_r(z) ∩ D`.
#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    pub spec: DomainSpec,
    pub clip: Option<([f64; 3], f64)>,
}

impl Region {
    pub fn new(spec: DomainSpec) -> Self {
        Region { spec, clip: None }
    }

    pub fn clipped(spec: DomainSpec, center: [f64; 3], radius: f64) -> Self {
        Region { spec, clip: Some((center, radius)) }
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    fn clip_distance(&self, x: &[f64]) -> Option<f64> {
        self.clip.map(|(c, r)| {
            let d: f64 = (0..self.dim()).map(|i| (x[i] - c[i]).powi(2)).sum();
            d.sqrt() - r
        })
    }

    pub fn signed_distance(&self, x: &[f64]) -> f64 {
        let base = self.spec.region_distance(x);
        match self.clip_distance(x) {
            Some(c) => base.max(c),
            None => base,
        }
    }

    pub fn boundary_part(&self, x: &[f64]) -> BoundaryPart {
        if let Some(c) = self.clip_distance(x) {
            if c > self.spec.region_distance(x) {
                return BoundaryPart::Clip;
            }
        }
        self.spec.boundary_part(x)
    }

    pub fn bounding_box(&self) -> ([f64; 3], [f64; 3]) {
        let (mut lo, mut hi) = self.spec.bounding_box();
        if let Some((c, r)) = self.clip {
            for d in 0..self.dim() {
                lo[d] = lo[d].max(c[d] - r);
                hi[d] = hi[d].min(c[d] + r);
            }
        }
        (lo, hi)
    }
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    x.iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// Signed distance to the symmetric wedge `{angle from +q axis < half}` in
/// the `(p, q)` plane.
fn wedge_signed_distance(p: f64, q: f64, half: f64) -> f64 {
    let (s, c) = half.sin_cos();
    let dist_ray = |ex: f64, ey: f64| {
        let along = p * ex + q * ey;
        if along > 0.0 {
            (p * ey - q * ex).abs()
        } else {
            p.hypot(q)
        }
    };
    let d = dist_ray(s, c).min(dist_ray(-s, c));
    let inside = p.abs().atan2(q) < half;
    if inside {
        -d
    } else {
        d
    }
}

fn segment_distance(a: [f64; 2], b: [f64; 2], x: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let t = (((x[0] - a[0]) * dx + (x[1] - a[1]) * dy) / len2).clamp(0.0, 1.0);
    (x[0] - a[0] - t * dx).hypot(x[1] - a[1] - t * dy)
}

fn ray_distance(a: [f64; 2], dir: [f64; 2], x: [f64; 2]) -> f64 {
    let len = dir[0].hypot(dir[1]);
    let (ux, uy) = (dir[0] / len, dir[1] / len);
    let t = ((x[0] - a[0]) * ux + (x[1] - a[1]) * uy).max(0.0);
    (x[0] - a[0] - t * ux).hypot(x[1] - a[1] - t * uy)
}

pub(crate) fn graph_height(v: &[[f64; 2]], s: f64) -> f64 {
    let n = v.len();
    let seg = if s <= v[0][0] {
        0
    } else if s >= v[n - 1][0] {
        n - 2
    } else {
        v.partition_point(|p| p[0] <= s).saturating_sub(1).min(n - 2)
    };
    let (a, b) = (v[seg], v[seg + 1]);
    a[1] + (b[1] - a[1]) * (s - a[0]) / (b[0] - a[0])
}

fn graph_signed_distance(v: &[[f64; 2]], x: &[f64]) -> f64 {
    let p = [x[0], x[1]];
    let n = v.len();
    let mut d = v
        .windows(2)
        .map(|w| segment_distance(w[0], w[1], p))
        .fold(f64::INFINITY, f64::min);
    let left = [v[0][0] - v[1][0], v[0][1] - v[1][1]];
    let right = [v[n - 1][0] - v[n - 2][0], v[n - 1][1] - v[n - 2][1]];
    d = d.min(ray_distance(v[0], left, p)).min(ray_distance(v[n - 1], right, p));
    if p[1] > graph_height(v, p[0]) {
        -d
    } else {
        d
    }
}

fn polygon_signed_distance(v: &[[f64; 2]], x: &[f64]) -> f64 {
    let p = [x[0], x[1]];
    let n = v.len();
    let mut d = f64::INFINITY;
    let mut inside = false;
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        d = d.min(segment_distance(a, b, p));
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let xc = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
            if p[0] < xc {
                inside = !inside;
            }
        }
    }
    if inside {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn sector_constructor_bounds() {
        assert!(make_sector(0.0).is_err());
        assert!(make_sector(2.0 * PI).is_err());
        let s = make_sector(PI / 4.0).unwrap();
        assert_eq!(s.aperture(), Some(PI / 4.0));
        assert_abs_diff_eq!(s.half_aperture(), PI / 8.0);
    }

    #[test]
    fn quarter_sector_matches_rotated_wedge() {
        // {x1 > x2 > 0} has opening π/4 and bisector at angle π/8; rotate it
        // onto the +x2 axis and compare distances.
        let s = make_sector(PI / 4.0).unwrap();
        let rot = PI / 2.0 - PI / 8.0;
        for &(a, b) in &[(0.9, 0.1), (0.5, 0.4), (0.3, -0.1), (-0.2, 0.5)] {
            let (x, y) = (a * rot.cos() - b * rot.sin(), a * rot.sin() + b * rot.cos());
            let inside = a > b && b > 0.0;
            assert_eq!(s.signed_distance(&[x, y]) < 0.0, inside);
        }
        // D = {x1 > 0} ∩ {x1 > x2} has opening 3π/4 with bisector at -π/8.
        let w = make_sector(3.0 * PI / 4.0).unwrap();
        let rot = PI / 2.0 + PI / 8.0;
        for &(a, b) in &[(0.5, 0.4), (0.5, 0.6), (0.1, -0.9), (-0.1, -0.5)] {
            let (x, y) = (a * rot.cos() - b * rot.sin(), a * rot.sin() + b * rot.cos());
            let inside = a > 0.0 && a > b;
            assert_eq!(w.signed_distance(&[x, y]) < 0.0, inside);
        }
    }

    #[test]
    fn half_plane_distance() {
        let s = make_sector(PI).unwrap();
        assert_abs_diff_eq!(s.signed_distance(&[0.0, 0.3]), -0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(s.signed_distance(&[0.7, -0.2]), 0.2, epsilon = 1e-15);
    }

    #[test]
    fn right_sector_bisector() {
        let s = make_sector(PI / 2.0).unwrap();
        let r = 0.37;
        assert_abs_diff_eq!(s.signed_distance(&[0.0, r]), -r * (PI / 4.0).sin(), epsilon = 1e-15);
    }

    #[test]
    fn cone_apertures() {
        let c = make_cone(3, 0.0).unwrap();
        assert_abs_diff_eq!(c.half_aperture(), PI / 2.0);
        assert_abs_diff_eq!(c.signed_distance(&[0.3, 0.1, 0.25]), -0.25, epsilon = 1e-15);
        let c = make_cone(3, 1.0).unwrap();
        assert_abs_diff_eq!(c.half_aperture(), PI / 4.0, epsilon = 1e-15);
        let re = make_cone(2, -1.0).unwrap();
        assert_abs_diff_eq!(re.half_aperture(), 3.0 * PI / 4.0, epsilon = 1e-15);
        let sec = make_sector(1.5 * PI).unwrap();
        for &p in &[[0.3, -0.4], [0.0, -0.5], [0.2, 0.1], [-0.6, -0.5], [0.05, -0.9]] {
            assert_abs_diff_eq!(re.signed_distance(&p), sec.signed_distance(&p), epsilon = 1e-14);
        }
    }

    #[test]
    fn graph_lipschitz_constants() {
        let flat = make_lipschitz_graph(&[[-1.0, 0.0], [0.0, 0.0], [1.0, 0.0]], 1.0).unwrap();
        assert_eq!(flat.slope(), Some(0.0));
        let wedge = make_lipschitz_graph(&[[-1.0, 1.0], [0.0, 0.0], [1.0, 1.0]], 1.0).unwrap();
        assert_eq!(wedge.slope(), Some(1.0));
        let skew = make_lipschitz_graph(&[[-1.0, 0.5], [0.0, 0.0], [1.0, 0.25]], 1.0).unwrap();
        assert_abs_diff_eq!(skew.slope().unwrap(), 0.5);
        assert!(make_lipschitz_graph(&[[-1.0, 1.0], [1.0, 1.0]], 1.0).is_err());
    }

    /// Brute-force distance to the polyline by dense sampling plus a local
    /// refinement pass.
    fn sampled_polyline_distance(v: &[[f64; 2]], p: [f64; 2]) -> f64 {
        let g = |s: f64| graph_height(v, s);
        let d = |s: f64| (p[0] - s).hypot(p[1] - g(s));
        let (a, b) = (-3.0, 3.0);
        let n = 200_000;
        let mut best = (f64::INFINITY, 0.0);
        for i in 0..=n {
            let s = a + (b - a) * i as f64 / n as f64;
            let di = d(s);
            if di < best.0 {
                best = (di, s);
            }
        }
        let w = (b - a) / n as f64;
        for i in 0..=n {
            let s = best.1 - w + 2.0 * w * i as f64 / n as f64;
            best.0 = best.0.min(d(s));
        }
        best.0
    }

    #[test]
    fn graph_distance_matches_sampling() {
        let v = [[-1.0, 1.0], [0.0, 0.0], [1.0, 1.0]];
        let wedge = make_lipschitz_graph(&v, 1.0).unwrap();
        let exact = wedge.signed_distance(&[0.5, 1.0]);
        let brute = sampled_polyline_distance(wedge.vertices().unwrap(), [0.5, 1.0]);
        assert!(exact < 0.0);
        assert_abs_diff_eq!(-exact, brute, epsilon = 1e-12);
        let skew = [[-1.0, 0.5], [0.0, 0.0], [0.4, 0.1], [1.0, 0.25]];
        let g = make_lipschitz_graph(&skew, 1.0).unwrap();
        for &p in &[[0.2, 0.6], [-0.7, 0.2], [0.9, -0.3], [1.7, 0.1]] {
            let e = g.signed_distance(&p).abs();
            let b = sampled_polyline_distance(g.vertices().unwrap(), p);
            assert_abs_diff_eq!(e, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn polygon_distance_square() {
        let sq = make_polygon(&[[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]).unwrap();
        assert_abs_diff_eq!(sq.signed_distance(&[0.0, 0.0]), -1.0);
        assert_abs_diff_eq!(sq.signed_distance(&[0.5, 0.9]), -0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(sq.signed_distance(&[2.0, 2.0]), 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let c = make_cone(3, 1.0).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        for key in ["kind", "dim", "aperture", "slope", "vertices", "radius"] {
            assert!(s.contains(key), "{s}");
        }
        let back: DomainSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let bad = r#"{"kind":"sector","dim":2,"aperture":7.0,"radius":1.0}"#;
        assert!(serde_json::from_str::<DomainSpec>(bad).is_err());
        let extra = r#"{"kind":"sector","dim":2,"aperture":1.0,"radius":1.0,"colour":3}"#;
        assert!(serde_json::from_str::<DomainSpec>(extra).is_err());
    }

    proptest! {
        #[test]
        fn conical_distance_is_homogeneous(
            open in 0.1f64..6.2, x in -1.0f64..1.0, y in -1.0f64..1.0, s in 0.01f64..50.0
        ) {
            let sec = make_sector(open).unwrap();
            let d = sec.signed_distance(&[x, y]);
            let ds = sec.signed_distance(&[s * x, s * y]);
            prop_assert!((ds - s * d).abs() <= 1e-12 * (1.0 + s * d.abs()));
        }

        #[test]
        fn cone3_distance_is_homogeneous(
            slope in -3.0f64..3.0, x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0, s in 0.01f64..50.0
        ) {
            let c = make_cone(3, slope).unwrap();
            let d = c.signed_distance(&[x, y, z]);
            let ds = c.signed_distance(&[s * x, s * y, s * z]);
            prop_assert!((ds - s * d).abs() <= 1e-12 * (1.0 + s * d.abs()));
        }
    }
}
