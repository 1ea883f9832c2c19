use std::sync::Arc;

use rayon::prelude::*;

use super::{CoefficientField, Dirichlet, RhsSpec};
use crate::error::Result;
use crate::geometry::GridDomain;

/// Sparse system `A x = rhs` in CSR form with `A = −L_h` on the unknowns.
///
/// Boundary values are folded into `rhs`. For elliptic coefficients with
/// `c ≤ 0` and `h·|b|` small, `A` is an M-matrix.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub grid: Arc<GridDomain>,
    pub row_ptr: Vec<usize>,
    pub cols: Vec<usize>,
    pub vals: Vec<f64>,
    pub rhs: Vec<f64>,
    pub symmetric: bool,
    pub dirichlet: Dirichlet,
}

impl LinearSystem {
    pub fn n(&self) -> usize {
        self.rhs.len()
    }

    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.cols[r.clone()], &self.vals[r])
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n())
            .map(|i| {
                let (c, v) = self.row(i);
                c.iter().zip(v).find(|(&j, _)| j == i).map_or(0.0, |(_, &a)| a)
            })
            .collect()
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        let body = |(i, yi): (usize, &mut f64)| {
            let (c, v) = self.row(i);
            *yi = c.iter().zip(v).map(|(&j, &a)| a * x[j]).sum();
        };
        if self.n() > 20_000 {
            y.par_iter_mut().enumerate().for_each(body);
        } else {
            y.iter_mut().enumerate().for_each(body);
        }
    }

    pub fn residual_norm(&self, x: &[f64]) -> f64 {
        let mut ax = vec![0.0; self.n()];
        self.matvec(x, &mut ax);
        ax.iter().zip(&self.rhs).map(|(a, b)| (b - a) * (b - a)).sum::<f64>().sqrt()
    }

    fn is_structurally_symmetric(&self) -> bool {
        (0..self.n()).all(|i| {
            let (c, v) = self.row(i);
            c.iter().zip(v).all(|(&j, &a)| {
                if j == i {
                    return true;
                }
                let (cj, vj) = self.row(j);
                match cj.binary_search(&i) {
                    Ok(p) => (vj[p] - a).abs() <= 1e-12 * a.abs(),
                    Err(_) => false,
                }
            })
        })
    }
}

/// Assemble `L v = f` with `f` from a right-hand side family.
pub fn assemble(
    grid: Arc<GridDomain>,
    coeffs: &CoefficientField,
    rhs: &RhsSpec,
    dirichlet: Dirichlet,
) -> Result<LinearSystem> {
    rhs.validate(grid.dim)?;
    let g = grid.clone();
    let rhs = *rhs;
    let values: Vec<f64> = (0..g.num_unknowns()).map(|u| rhs.value(&g, &g.point(u))).collect();
    assemble_with_values(grid, coeffs, &values, dirichlet)
}

/// Assemble `L v = f` with `f` given per unknown.
///
/// Second differences use the Shortley–Weller stencil on cut arms; first
/// differences are centered over the two arms; face coefficients of `a` are
/// harmonic means of the two endpoint values.
pub fn assemble_with_values(
    grid: Arc<GridDomain>,
    coeffs: &CoefficientField,
    f: &[f64],
    dirichlet: Dirichlet,
) -> Result<LinearSystem> {
    let g = &*grid;
    let n = g.num_unknowns();
    assert_eq!(f.len(), n);
    let h = g.h;
    let samples: Vec<_> = (0..n).into_par_iter().map(|u| coeffs.at(&g.point(u))).collect();
    for p in &samples {
        coeffs.check(p, g.dim)?;
    }
    let rows: Vec<(Vec<(usize, f64)>, f64)> = (0..n)
        .into_par_iter()
        .map(|u| {
            let p = &samples[u];
            let eta = g.intercepts(u);
            let mut entries: Vec<(usize, f64)> = Vec::with_capacity(2 * g.dim + 1);
            let mut diag = -p.c;
            let mut b_row = -f[u];
            for axis in 0..g.dim {
                let (em, ep) = (eta[2 * axis], eta[2 * axis + 1]);
                let span = (em + ep) * h;
                for (dir, e, sign) in [(2 * axis, em, -1.0), (2 * axis + 1, ep, 1.0)] {
                    let nb = g.neighbor_unknown(u, dir);
                    let a_face = match nb {
                        Some(m) => {
                            let (x, y) = (p.a[axis], samples[m].a[axis]);
                            2.0 * x * y / (x + y)
                        }
                        None => p.a[axis],
                    };
                    let w = 2.0 * a_face / (e * h * span) + sign * p.b[axis] / span;
                    diag += 2.0 * a_face / (e * h * span);
                    match nb {
                        Some(m) => entries.push((m, -w)),
                        None => {
                            let (x, part) = g.boundary_point(u, dir).expect("cut arm has a boundary point");
                            b_row += w * dirichlet.value(&x, part);
                        }
                    }
                }
            }
            entries.push((u, diag));
            entries.sort_by_key(|e| e.0);
            (entries, b_row)
        })
        .collect();
    let mut row_ptr = Vec::with_capacity(n + 1);
    let mut cols = Vec::new();
    let mut vals = Vec::new();
    let mut rhs = Vec::with_capacity(n);
    row_ptr.push(0);
    for (entries, b) in rows {
        for (j, v) in entries {
            cols.push(j);
            vals.push(v);
        }
        row_ptr.push(cols.len());
        rhs.push(b);
    }
    let mut sys = LinearSystem { grid, row_ptr, cols, vals, rhs, symmetric: false, dirichlet };
    sys.symmetric = coeffs.maybe_symmetric() && sys.is_structurally_symmetric();
    Ok(sys)
}
