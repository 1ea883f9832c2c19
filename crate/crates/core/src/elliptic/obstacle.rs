use std::sync::Arc;

use super::{assemble_with_values, CoefficientField, Dirichlet, LinearSystem, ScalarField};
use crate::error::{invalid, Error, Result};
use crate::geometry::GridDomain;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsorOptions {
    /// Relaxation factor; `None` picks `2 / (1 + sin(π / N))` with `N` the
    /// largest lattice extent.
    pub omega: Option<f64>,
    /// Stop when the largest update, relative to `max(1, ‖x‖∞)`, drops below
    /// this.
    pub tol: f64,
    /// Per-cell complementarity bound `|min(x_i, (Ax − b)_i / A_ii)|`.
    pub gap_tol: f64,
    pub max_iter: usize,
}

impl Default for PsorOptions {
    fn default() -> Self {
        PsorOptions { omega: None, tol: 1e-11, gap_tol: 1e-8, max_iter: 200_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsorStats {
    pub iterations: usize,
    pub max_gap: f64,
    pub omega: f64,
}

/// Projected SOR for `x ≥ lower`, `Ax − b ≥ 0`, `(x − lower)·(Ax − b) = 0`.
pub fn psor(
    system: &LinearSystem,
    lower: f64,
    opts: PsorOptions,
    initial: Option<&[f64]>,
) -> Result<(Vec<f64>, PsorStats)> {
    let n = system.n();
    let g = &*system.grid;
    let omega = opts.omega.unwrap_or_else(|| {
        let big = g.shape[..g.dim].iter().copied().max().unwrap_or(2) as f64;
        2.0 / (1.0 + (std::f64::consts::PI / big).sin())
    });
    if !(omega > 0.0 && omega < 2.0) {
        return Err(invalid("relaxation factor must lie in (0, 2)"));
    }
    let diag = system.diagonal();
    if diag.iter().any(|&d| !(d > 0.0)) {
        return Err(invalid("projected SOR needs a positive diagonal"));
    }
    let mut x = initial.map_or_else(|| vec![lower; n], |v| v.iter().map(|&a| a.max(lower)).collect());
    let mut iterations = 0;
    loop {
        let mut delta = 0.0f64;
        let mut scale = 1.0f64;
        for i in 0..n {
            let (cols, vals) = system.row(i);
            let mut s = system.rhs[i];
            for (&j, &a) in cols.iter().zip(vals) {
                if j != i {
                    s -= a * x[j];
                }
            }
            let gs = s / diag[i];
            let new = ((1.0 - omega) * x[i] + omega * gs).max(lower);
            delta = delta.max((new - x[i]).abs());
            scale = scale.max(new.abs());
            x[i] = new;
        }
        iterations += 1;
        if delta <= opts.tol * scale {
            break;
        }
        if iterations >= opts.max_iter || !delta.is_finite() {
            return Err(Error::NumericalFailure {
                message: format!("projected SOR stalled after {iterations} sweeps"),
                residual: delta,
            });
        }
    }
    let max_gap = complementarity_gap(system, &diag, &x, lower);
    if max_gap > opts.gap_tol {
        return Err(Error::NumericalFailure {
            message: "projected SOR left a complementarity gap".into(),
            residual: max_gap,
        });
    }
    Ok((x, PsorStats { iterations, max_gap, omega }))
}

fn complementarity_gap(system: &LinearSystem, diag: &[f64], x: &[f64], lower: f64) -> f64 {
    let mut ax = vec![0.0; x.len()];
    system.matvec(x, &mut ax);
    (0..x.len())
        .map(|i| {
            let r = (ax[i] - system.rhs[i]) / diag[i];
            (x[i] - lower).min(r).abs()
        })
        .fold(0.0, f64::max)
}

/// Solve `u ≥ 0`, `Δu ≤ f`, `u·(Δu − f) = 0` with `u = 0` on the boundary,
/// where `forcing` holds `f` per unknown.
pub fn solve_obstacle(
    grid: Arc<GridDomain>,
    forcing: &[f64],
    opts: PsorOptions,
    initial: Option<&[f64]>,
) -> Result<(ScalarField, PsorStats)> {
    if forcing.len() != grid.num_unknowns() {
        return Err(invalid("forcing length does not match the grid"));
    }
    // −Δu ≥ −f  ⇔  A u ≥ b with A = −Δ_h and b = −f
    let system = assemble_with_values(grid.clone(), &CoefficientField::identity(), forcing, Dirichlet::Zero)?;
    let (x, stats) = psor(&system, 0.0, opts, initial)?;
    Ok((ScalarField::new(grid, x, Dirichlet::Zero), stats))
}
