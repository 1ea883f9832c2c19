//! Hele-Shaw injection on a table `D` through the Baiocchi transform: the
//! potential `u^t ≥ 0` solves `Δu^t = 1 − χ_{Ω⁰} − t δ_z` on `{u^t > 0}` with
//! `u^t = 0` on `∂D`, and the wet set is `Ω^t = {u^t > 0} ∪ Ω⁰`.

use std::io::Write;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::elliptic::{solve_obstacle, PsorOptions, PsorStats, ScalarField};
use crate::error::{invalid, Result};
use crate::geometry::{rasterize_region, DomainKind, DomainSpec, GridDomain, Region};

/// `u^t > WET_THRESHOLD` marks a wet cell.
pub const WET_THRESHOLD: f64 = 1e-12;
/// Radius of the initial wet ball, in grid widths.
pub const INITIAL_RADIUS_CELLS: f64 = 8.0;
/// Radius of the corner neighborhood, in grid widths.
pub const CORNER_RADIUS_CELLS: f64 = 4.0;
/// Ratio between consecutive injection parameters of a sweep.
pub const SCHEDULE_FACTOR: f64 = 2.0;

/// A table, a source and a grid, reused across injection parameters.
#[derive(Clone, Debug)]
pub struct HeleShawProblem {
    pub grid: Arc<GridDomain>,
    pub source: [f64; 3],
    source_cell: usize,
    initial: Vec<bool>,
}

#[derive(Clone, Debug)]
pub struct HeleShawState {
    pub t: f64,
    pub u: ScalarField,
    pub wet_mask: Vec<bool>,
    pub source: [f64; 3],
    pub initial_wet: Vec<bool>,
    pub stats: PsorStats,
    /// `Σ_i (−Δ_h u)_i h^n`: liquid lost through `∂D`.
    pub outflow: f64,
}

impl HeleShawState {
    pub fn wet_area(&self) -> f64 {
        self.wet_mask.iter().filter(|&&w| w).count() as f64 * self.u.grid.cell_volume()
    }

    pub fn initial_area(&self) -> f64 {
        self.initial_wet.iter().filter(|&&w| w).count() as f64 * self.u.grid.cell_volume()
    }

    /// `| |Ω^t| − |Ω⁰| + outflow − t |`.
    pub fn volume_balance_error(&self) -> f64 {
        (self.wet_area() - self.initial_area() + self.outflow - self.t).abs()
    }

    /// Lattice mask as rows of `0`/`1`, top row first; cells outside `D`
    /// are `0`.
    pub fn write_mask_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let g = &*self.u.grid;
        let [nx, ny, _] = g.shape;
        for j in (0..ny).rev() {
            let row: Vec<&str> = (0..nx)
                .map(|i| match g.unknown_at(i + nx * j) {
                    Some(u) if self.wet_mask[u] => "1",
                    _ => "0",
                })
                .collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}

impl HeleShawProblem {
    pub fn new(table: &DomainSpec, source: &[f64], h: f64) -> Result<Self> {
        if table.dim() != 2 {
            return Err(invalid("Hele-Shaw tables are planar"));
        }
        if !matches!(table.kind(), DomainKind::Polygon | DomainKind::Ball) {
            return Err(invalid("a Hele-Shaw table is a polygon or a disk"));
        }
        if !(h > 0.0) {
            return Err(invalid("grid width must be positive"));
        }
        let grid = Arc::new(rasterize_region(&Region::new(table.clone()), h)?);
        let src = [source[0], source[1], 0.0];
        let r0 = INITIAL_RADIUS_CELLS * h;
        if table.signed_distance(&src[..2]) > -(r0 + h) {
            return Err(invalid("the initial wet ball around the source must lie inside the table"));
        }
        let source_cell = grid
            .nearest_lattice(&src)
            .and_then(|lin| grid.unknown_at(lin))
            .ok_or_else(|| invalid("source is outside the table"))?;
        let initial = (0..grid.num_unknowns())
            .map(|u| {
                let x = grid.point(u);
                (x[0] - src[0]).hypot(x[1] - src[1]) <= r0
            })
            .collect();
        Ok(HeleShawProblem { grid, source: src, source_cell, initial })
    }

    pub fn forcing(&self, t: f64) -> Vec<f64> {
        let cell = self.grid.cell_volume();
        (0..self.grid.num_unknowns())
            .map(|u| {
                let mut f = if self.initial[u] { 0.0 } else { 1.0 };
                if u == self.source_cell {
                    f -= t / cell;
                }
                f
            })
            .collect()
    }

    /// Solve at injection parameter `t`, optionally warm-started from a
    /// potential at a smaller parameter.
    pub fn solve(&self, t: f64, warm: Option<&[f64]>) -> Result<HeleShawState> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(invalid("injection parameter must be finite and nonnegative"));
        }
        let f = self.forcing(t);
        let (u, stats) = if t == 0.0 {
            let n = self.grid.num_unknowns();
            let zero = ScalarField::new(self.grid.clone(), vec![0.0; n], crate::elliptic::Dirichlet::Zero);
            (zero, PsorStats { iterations: 0, max_gap: 0.0, omega: 1.0 })
        } else {
            solve_obstacle(self.grid.clone(), &f, PsorOptions::default(), warm)?
        };
        let wet_mask: Vec<bool> = u.values.iter().zip(&self.initial).map(|(&v, &i)| i || v > WET_THRESHOLD).collect();
        let outflow = discrete_outflow(&u);
        Ok(HeleShawState {
            t,
            u,
            wet_mask,
            source: self.source,
            initial_wet: self.initial.clone(),
            stats,
            outflow,
        })
    }

    /// Unknowns within `CORNER_RADIUS_CELLS·h` of `corner`.
    pub fn corner_cells(&self, corner: &[f64]) -> Vec<usize> {
        let r = CORNER_RADIUS_CELLS * self.grid.h;
        (0..self.grid.num_unknowns())
            .filter(|&u| {
                let x = self.grid.point(u);
                (x[0] - corner[0]).hypot(x[1] - corner[1]) <= r
            })
            .collect()
    }
}

/// `Σ_i (−Δ_h u)_i h^n`, the discrete flux of `u` out through `∂D`.
fn discrete_outflow(u: &ScalarField) -> f64 {
    let g = &*u.grid;
    let h = g.h;
    let mut total = 0.0;
    for i in 0..g.num_unknowns() {
        let eta = g.intercepts(i);
        let mut lap = 0.0;
        for axis in 0..g.dim {
            let (em, ep) = (eta[2 * axis], eta[2 * axis + 1]);
            let side = |dir: usize| g.neighbor_unknown(i, dir).map_or(0.0, |n| u.values[n]);
            let (vm, vp) = (side(2 * axis), side(2 * axis + 1));
            let c = u.values[i];
            lap += 2.0 / ((em + ep) * h) * ((vp - c) / (ep * h) - (c - vm) / (em * h));
        }
        total -= lap;
    }
    total * g.cell_volume()
}

pub fn heleshaw_solve(table: &DomainSpec, source: &[f64], t: f64, h: f64) -> Result<HeleShawState> {
    HeleShawProblem::new(table, source, h)?.solve(t, None)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WettingReport {
    /// Interior angle at the corner when it is a polygon vertex.
    pub corner_angle: Option<f64>,
    pub corner: [f64; 2],
    pub source: [f64; 2],
    pub h: f64,
    pub t_schedule: Vec<f64>,
    /// Fraction of corner cells wet at each scheduled parameter.
    pub corner_wet_fraction: Vec<f64>,
    pub wet: bool,
    pub first_wet_t: Option<f64>,
    /// Largest volume-balance error over the schedule.
    pub volume_balance_error: f64,
    pub initial_area: f64,
    pub wet_threshold: f64,
    pub corner_radius: f64,
    pub schedule_factor: f64,
    pub refinement_steps: usize,
}

/// Interior angle of a polygon at vertex `corner`, if it is one.
pub fn corner_angle(table: &DomainSpec, corner: &[f64]) -> Option<f64> {
    let v = table.vertices()?;
    if table.kind() != DomainKind::Polygon {
        return None;
    }
    let n = v.len();
    let i = v.iter().position(|p| (p[0] - corner[0]).hypot(p[1] - corner[1]) < 1e-12)?;
    let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
    let area2: f64 = (0..n).map(|k| v[k][0] * v[(k + 1) % n][1] - v[(k + 1) % n][0] * v[k][1]).sum();
    let (e1, e2) = ([c[0] - b[0], c[1] - b[1]], [a[0] - b[0], a[1] - b[1]]);
    // counter-clockwise angle from the outgoing edge to the incoming one
    let mut ang = (e1[0] * e2[1] - e1[1] * e2[0]).atan2(e1[0] * e2[0] + e1[1] * e2[1]);
    if area2 < 0.0 {
        ang = -ang;
    }
    if ang < 0.0 {
        ang += 2.0 * std::f64::consts::PI;
    }
    Some(ang)
}

/// Sweep `t_i = t_max · 2^{i+1−steps}`, `i = 0..steps`; when the corner
/// first wets between two scheduled parameters, bisect geometrically
/// `refinement_steps` times to sharpen `first_wet_t`.
pub fn wets_corner(
    table: &DomainSpec,
    corner: &[f64],
    source: &[f64],
    t_max: f64,
    steps: usize,
    h: f64,
) -> Result<WettingReport> {
    wets_corner_with(table, corner, source, t_max, steps, h, 6)
}

pub fn wets_corner_with(
    table: &DomainSpec,
    corner: &[f64],
    source: &[f64],
    t_max: f64,
    steps: usize,
    h: f64,
    refinement_steps: usize,
) -> Result<WettingReport> {
    wets_corner_traced(table, corner, source, t_max, steps, h, refinement_steps).map(|(r, _)| r)
}

/// As [`wets_corner_with`], also returning the state at `t_max`.
pub fn wets_corner_traced(
    table: &DomainSpec,
    corner: &[f64],
    source: &[f64],
    t_max: f64,
    steps: usize,
    h: f64,
    refinement_steps: usize,
) -> Result<(WettingReport, HeleShawState)> {
    if !(t_max > 0.0) || steps == 0 {
        return Err(invalid("need t_max > 0 and at least one step"));
    }
    if table.signed_distance(&corner[..2]).abs() > 1e-9 {
        return Err(invalid("corner must lie on the table boundary"));
    }
    let prob = HeleShawProblem::new(table, source, h)?;
    let cells = prob.corner_cells(corner);
    if cells.is_empty() {
        return Err(invalid("no grid cells near the corner"));
    }
    let wet_fraction = |s: &HeleShawState| cells.iter().filter(|&&u| s.wet_mask[u]).count() as f64 / cells.len() as f64;
    let schedule: Vec<f64> =
        (0..steps).map(|i| t_max * SCHEDULE_FACTOR.powi(i as i32 + 1 - steps as i32)).collect();
    let mut report = WettingReport {
        corner_angle: corner_angle(table, corner),
        corner: [corner[0], corner[1]],
        source: [source[0], source[1]],
        h,
        t_schedule: schedule.clone(),
        corner_wet_fraction: vec![],
        wet: false,
        first_wet_t: None,
        volume_balance_error: 0.0,
        initial_area: 0.0,
        wet_threshold: WET_THRESHOLD,
        corner_radius: CORNER_RADIUS_CELLS * h,
        schedule_factor: SCHEDULE_FACTOR,
        refinement_steps,
    };
    let mut prev: Option<HeleShawState> = None;
    for &t in &schedule {
        let state = prob.solve(t, prev.as_ref().map(|s| s.u.values.as_slice()))?;
        report.initial_area = state.initial_area();
        report.volume_balance_error = report.volume_balance_error.max(state.volume_balance_error());
        let frac = wet_fraction(&state);
        report.corner_wet_fraction.push(frac);
        if frac > 0.0 && !report.wet {
            report.wet = true;
            let mut hi = t;
            let (mut lo, mut lo_state) = match &prev {
                Some(p) => (p.t, p.clone()),
                None => (0.0, prob.solve(0.0, None)?),
            };
            for _ in 0..refinement_steps {
                let mid = if lo > 0.0 { (lo * hi).sqrt() } else { 0.5 * hi };
                let s = prob.solve(mid, Some(&lo_state.u.values))?;
                if wet_fraction(&s) > 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    lo_state = s;
                }
            }
            report.first_wet_t = Some(hi);
        }
        prev = Some(state);
    }
    Ok((report, prev.expect("schedule is nonempty")))
}
