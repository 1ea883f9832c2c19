use rayon::prelude::*;

use super::{BoundaryPart, DomainSpec, Region, BOUNDARY_EPS};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellKind {
    Exterior,
    Interior,
    /// Inside the domain with at least one neighbor outside.
    BoundaryAdjacent,
}

const NONE: u32 = u32::MAX;

/// Uniform lattice `x = (idx − origin_index)·h` covering a region.
///
/// Lattice nodes are called cells. Cells inside the region are the unknowns
/// of every discrete problem; for each unknown and each of the `2·dim` axis
/// directions `intercepts` stores the fraction `η ∈ (0, 1]` of the step at
/// which the segment to the neighbor leaves the region (`1` when the neighbor
/// is itself inside).
#[derive(Clone, Debug)]
pub struct GridDomain {
    pub h: f64,
    pub dim: usize,
    pub shape: [usize; 3],
    pub origin_index: [i64; 3],
    pub cells: Vec<CellKind>,
    unknown_of: Vec<u32>,
    nodes: Vec<usize>,
    intercepts: Vec<[f64; 6]>,
    pub region: Region,
}

/// Rasterize `spec ∩ B_R` (or the ball/polygon itself).
pub fn rasterize(spec: &DomainSpec, h: f64) -> Result<GridDomain> {
    if !(h > 0.0) || h > spec.radius() / 16.0 + 1e-15 {
        return Err(invalid(format!("grid width {h} must lie in (0, R/16]")));
    }
    rasterize_region(&Region::new(spec.clone()), h)
}

pub fn rasterize_region(region: &Region, h: f64) -> Result<GridDomain> {
    let dim = region.dim();
    if !(2..=3).contains(&dim) {
        return Err(invalid("rasterization supports dim 2 and 3"));
    }
    if !(h > 0.0) {
        return Err(invalid("grid width must be positive"));
    }
    let (lo, hi) = region.bounding_box();
    let mut shape = [1usize; 3];
    let mut origin_index = [0i64; 3];
    for d in 0..dim {
        let imin = (lo[d] / h).floor() as i64 - 1;
        let imax = (hi[d] / h).ceil() as i64 + 1;
        origin_index[d] = -imin;
        shape[d] = (imax - imin + 1) as usize;
    }
    let total = shape[0] * shape[1] * shape[2];

    let coords = |lin: usize| -> [f64; 3] {
        let i = lin % shape[0];
        let j = (lin / shape[0]) % shape[1];
        let k = lin / (shape[0] * shape[1]);
        let mut x = [0.0; 3];
        for (d, idx) in [i, j, k].into_iter().enumerate().take(dim) {
            x[d] = (idx as i64 - origin_index[d]) as f64 * h;
        }
        x
    };

    let inside: Vec<bool> = (0..total)
        .into_par_iter()
        .map(|lin| region.signed_distance(&coords(lin)) < -BOUNDARY_EPS)
        .collect();

    let strides = [1usize, shape[0], shape[0] * shape[1]];
    let neighbor = |lin: usize, dir: usize| -> Option<usize> {
        let axis = dir / 2;
        let idx = (lin / strides[axis]) % shape[axis];
        if dir.is_multiple_of(2) {
            (idx > 0).then(|| lin - strides[axis])
        } else {
            (idx + 1 < shape[axis]).then(|| lin + strides[axis])
        }
    };

    let mut unknown_of = vec![NONE; total];
    let mut nodes = Vec::new();
    for (lin, &ins) in inside.iter().enumerate() {
        if ins {
            unknown_of[lin] = nodes.len() as u32;
            nodes.push(lin);
        }
    }
    if nodes.is_empty() {
        return Err(Error::EmptyDomain(format!("no interior cells at h = {h}")));
    }

    let intercepts: Vec<[f64; 6]> = nodes
        .par_iter()
        .map(|&lin| {
            let mut eta = [1.0; 6];
            let x = coords(lin);
            for dir in 0..2 * dim {
                let nb_inside = neighbor(lin, dir).is_some_and(|n| inside[n]);
                if !nb_inside {
                    eta[dir] = crossing_fraction(region, &x, dir, h);
                }
            }
            eta
        })
        .collect();

    let cells = (0..total)
        .map(|lin| {
            if !inside[lin] {
                CellKind::Exterior
            } else if intercepts[unknown_of[lin] as usize][..2 * dim].iter().any(|&e| e < 1.0)
                || (0..2 * dim).any(|dir| !neighbor(lin, dir).is_some_and(|n| inside[n]))
            {
                CellKind::BoundaryAdjacent
            } else {
                CellKind::Interior
            }
        })
        .collect();

    Ok(GridDomain { h, dim, shape, origin_index, cells, unknown_of, nodes, intercepts, region: region.clone() })
}

/// Fraction of the step from `x` along direction `dir` where the region's
/// signed distance crosses zero, found by bisection to 1e-13.
fn crossing_fraction(region: &Region, x: &[f64; 3], dir: usize, h: f64) -> f64 {
    let axis = dir / 2;
    let sign = if dir.is_multiple_of(2) { -1.0 } else { 1.0 };
    let at = |t: f64| {
        let mut y = *x;
        y[axis] += sign * t * h;
        region.signed_distance(&y)
    };
    if at(1.0) <= 0.0 {
        return 1.0;
    }
    let (mut a, mut b) = (0.0f64, 1.0f64);
    while b - a > 1e-13 {
        let m = 0.5 * (a + b);
        if at(m) < 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    (0.5 * (a + b)).max(1e-13)
}

impl GridDomain {
    pub fn spec(&self) -> &DomainSpec {
        &self.region.spec
    }

    pub fn num_unknowns(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_lattice(&self) -> usize {
        self.cells.len()
    }

    pub fn strides(&self) -> [usize; 3] {
        [1, self.shape[0], self.shape[0] * self.shape[1]]
    }

    /// Lattice index of unknown `u`.
    pub fn lattice_of(&self, u: usize) -> usize {
        self.nodes[u]
    }

    pub fn unknown_at(&self, lin: usize) -> Option<usize> {
        let u = self.unknown_of[lin];
        (u != NONE).then_some(u as usize)
    }

    pub fn lattice_coords(&self, lin: usize) -> [i64; 3] {
        let i = lin % self.shape[0];
        let j = (lin / self.shape[0]) % self.shape[1];
        let k = lin / (self.shape[0] * self.shape[1]);
        [i as i64, j as i64, k as i64]
    }

    pub fn lattice_point(&self, lin: usize) -> [f64; 3] {
        let c = self.lattice_coords(lin);
        let mut x = [0.0; 3];
        for d in 0..self.dim {
            x[d] = (c[d] - self.origin_index[d]) as f64 * self.h;
        }
        x
    }

    pub fn point(&self, u: usize) -> [f64; 3] {
        self.lattice_point(self.nodes[u])
    }

    pub fn lattice_index(&self, c: [i64; 3]) -> Option<usize> {
        let mut lin = 0usize;
        let strides = self.strides();
        for d in 0..3 {
            if c[d] < 0 || c[d] as usize >= self.shape[d] {
                return None;
            }
            lin += c[d] as usize * strides[d];
        }
        Some(lin)
    }

    /// Lattice cell nearest to a physical point.
    pub fn nearest_lattice(&self, x: &[f64]) -> Option<usize> {
        let mut c = [0i64; 3];
        for d in 0..self.dim {
            c[d] = (x[d] / self.h).round() as i64 + self.origin_index[d];
        }
        self.lattice_index(c)
    }

    pub fn neighbor(&self, lin: usize, dir: usize) -> Option<usize> {
        let axis = dir / 2;
        let strides = self.strides();
        let idx = (lin / strides[axis]) % self.shape[axis];
        if dir.is_multiple_of(2) {
            (idx > 0).then(|| lin - strides[axis])
        } else {
            (idx + 1 < self.shape[axis]).then(|| lin + strides[axis])
        }
    }

    /// Unknown adjacent to unknown `u` along `dir`, if inside.
    pub fn neighbor_unknown(&self, u: usize, dir: usize) -> Option<usize> {
        self.neighbor(self.nodes[u], dir).and_then(|n| self.unknown_at(n))
    }

    pub fn intercepts(&self, u: usize) -> &[f64; 6] {
        &self.intercepts[u]
    }

    /// Boundary point reached from unknown `u` along `dir` and the boundary
    /// part it lies on; `None` when the neighbor is inside.
    pub fn boundary_point(&self, u: usize, dir: usize) -> Option<([f64; 3], BoundaryPart)> {
        if self.neighbor_unknown(u, dir).is_some() {
            return None;
        }
        let eta = self.intercepts[u][dir];
        let mut x = self.point(u);
        let axis = dir / 2;
        x[axis] += if dir.is_multiple_of(2) { -eta * self.h } else { eta * self.h };
        Some((x, self.region.boundary_part(&x)))
    }

    pub fn cell_kind(&self, u: usize) -> CellKind {
        self.cells[self.nodes[u]]
    }

    pub fn cell_volume(&self) -> f64 {
        self.h.powi(self.dim as i32)
    }

    /// Restrict to the same region but keep the lattice; used by callers
    /// that need another region sharing `h` and the origin alignment.
    pub fn same_lattice(&self, other: &GridDomain) -> bool {
        self.h == other.h
            && self.shape == other.shape
            && self.origin_index == other.origin_index
            && self.nodes == other.nodes
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_cone, make_sector};
    use std::f64::consts::PI;

    #[test]
    fn half_plane_first_row() {
        let hp = make_sector(PI).unwrap();
        let h = 1.0 / 32.0;
        let g = rasterize(&hp, h).unwrap();
        for u in 0..g.num_unknowns() {
            let x = g.point(u);
            assert!(x[1] > 0.0);
            if (x[1] - h).abs() < 1e-14 && x[0].abs() < 0.5 {
                assert!((g.intercepts(u)[2] - x[1] / h).abs() < 1e-12);
            }
        }
        for lin in 0..g.num_lattice() {
            let x = g.lattice_point(lin);
            let inside = x[1] > 1e-12 && x[0].hypot(x[1]) < 1.0 - 1e-12;
            assert_eq!(g.unknown_at(lin).is_some(), inside, "{x:?}");
        }
    }

    #[test]
    fn sector_area_matches() {
        let s = make_sector(PI / 4.0).unwrap();
        let h = 1.0 / 64.0;
        let g = rasterize(&s, h).unwrap();
        let area = PI / 4.0 / 2.0;
        let count = g.num_unknowns() as f64;
        assert!((count * h * h - area).abs() / area < 0.01, "{count}");
    }

    #[test]
    fn cone_classification_consistent() {
        let c = make_cone(3, 1.0).unwrap();
        let g = rasterize(&c, 1.0 / 32.0).unwrap();
        for lin in 0..g.num_lattice() {
            let x = g.lattice_point(lin);
            let sd = g.region.signed_distance(&x);
            assert_eq!(g.unknown_at(lin).is_some(), sd < -BOUNDARY_EPS);
        }
    }

    #[test]
    fn intercepts_land_on_boundary() {
        for spec in [make_sector(3.0 * PI / 4.0).unwrap(), make_cone(3, 0.5).unwrap()] {
            let g = rasterize(&spec, 1.0 / 32.0).unwrap();
            for u in 0..g.num_unknowns() {
                for dir in 0..2 * g.dim {
                    if let Some((x, _)) = g.boundary_point(u, dir) {
                        assert!(g.region.signed_distance(&x).abs() < 1e-9);
                        let eta = g.intercepts(u)[dir];
                        assert!(eta > 0.0 && eta <= 1.0);
                    }
                }
            }
        }
    }

    #[test]
    fn aperture_monotone() {
        let h = 1.0 / 64.0;
        let a = rasterize(&make_sector(1.0).unwrap(), h).unwrap();
        let b = rasterize(&make_sector(2.0).unwrap(), h).unwrap();
        for u in 0..a.num_unknowns() {
            let x = a.point(u);
            let lin = b.nearest_lattice(&x).unwrap();
            assert!(b.unknown_at(lin).is_some());
        }
    }

    #[test]
    fn rejects_coarse_or_empty() {
        let s = make_sector(PI / 2.0).unwrap();
        assert!(rasterize(&s, 0.1).is_err());
        let sliver = crate::geometry::make_polygon(&[[0.1, 0.1], [0.11, 0.1], [0.1, 0.11]]).unwrap();
        let r = rasterize_region(&Region::new(sliver), 0.25);
        assert!(matches!(r, Err(Error::EmptyDomain(_))));
    }
}
