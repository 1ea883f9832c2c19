use super::{LinearSystem, ScalarField};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    /// Relative residual target `‖b − Ax‖ / ‖b‖`.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { tol: 1e-10, max_iter: 100_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveStats {
    pub iterations: usize,
    pub relative_residual: f64,
    pub method: &'static str,
}

/// Solve with default options.
pub fn solve(system: &LinearSystem, tol: f64) -> Result<ScalarField> {
    solve_with(system, SolveOptions { tol, ..Default::default() }, None).map(|(f, _)| f)
}

/// Jacobi-preconditioned CG for symmetric systems, BiCGStab otherwise.
pub fn solve_with(
    system: &LinearSystem,
    opts: SolveOptions,
    initial: Option<&[f64]>,
) -> Result<(ScalarField, SolveStats)> {
    let n = system.n();
    let mut x = initial.map_or_else(|| vec![0.0; n], |v| v.to_vec());
    let bnorm = norm(&system.rhs);
    let stats = if bnorm == 0.0 {
        x.iter_mut().for_each(|v| *v = 0.0);
        SolveStats { iterations: 0, relative_residual: 0.0, method: "trivial" }
    } else {
        let inv_diag: Vec<f64> = system.diagonal().iter().map(|d| 1.0 / d).collect();
        if system.symmetric {
            cg(system, &inv_diag, &mut x, bnorm, opts)?
        } else {
            bicgstab(system, &inv_diag, &mut x, bnorm, opts)?
        }
    };
    let field = ScalarField::new(system.grid.clone(), x, system.dirichlet.clone());
    Ok((field, stats))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn residual(system: &LinearSystem, x: &[f64]) -> Vec<f64> {
    let mut r = vec![0.0; x.len()];
    system.matvec(x, &mut r);
    r.iter_mut().zip(&system.rhs).for_each(|(ri, b)| *ri = b - *ri);
    r
}

fn failure(method: &str, iters: usize, rel: f64) -> Error {
    Error::NumericalFailure { message: format!("{method} did not converge in {iters} iterations"), residual: rel }
}

fn cg(sys: &LinearSystem, m: &[f64], x: &mut [f64], bnorm: f64, opts: SolveOptions) -> Result<SolveStats> {
    let n = x.len();
    let mut r = residual(sys, x);
    let mut z: Vec<f64> = r.iter().zip(m).map(|(a, b)| a * b).collect();
    let mut p = z.clone();
    let mut ap = vec![0.0; n];
    let mut rz = dot(&r, &z);
    let mut rel = norm(&r) / bnorm;
    for it in 0..opts.max_iter {
        if rel <= opts.tol {
            return Ok(SolveStats { iterations: it, relative_residual: rel, method: "cg" });
        }
        sys.matvec(&p, &mut ap);
        let pap = dot(&p, &ap);
        if !(pap > 0.0) {
            return Err(Error::NumericalFailure { message: "cg met a non-positive curvature".into(), residual: rel });
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        rel = norm(&r) / bnorm;
        for i in 0..n {
            z[i] = r[i] * m[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    if rel <= opts.tol {
        return Ok(SolveStats { iterations: opts.max_iter, relative_residual: rel, method: "cg" });
    }
    Err(failure("cg", opts.max_iter, rel))
}

fn bicgstab(sys: &LinearSystem, m: &[f64], x: &mut [f64], bnorm: f64, opts: SolveOptions) -> Result<SolveStats> {
    let n = x.len();
    let mut r = residual(sys, x);
    let mut r_hat = r.clone();
    let (mut rho, mut alpha, mut omega) = (1.0, 1.0, 1.0);
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut p_hat = vec![0.0; n];
    let mut s_hat = vec![0.0; n];
    let mut t = vec![0.0; n];
    let mut rel = norm(&r) / bnorm;
    for it in 0..opts.max_iter {
        if rel <= opts.tol {
            return Ok(SolveStats { iterations: it, relative_residual: rel, method: "bicgstab" });
        }
        let rho_new = dot(&r_hat, &r);
        if rho_new.abs() < 1e-300 || omega == 0.0 {
            // restart on breakdown
            r = residual(sys, x);
            r_hat.copy_from_slice(&r);
            rho = 1.0;
            alpha = 1.0;
            omega = 1.0;
            v.iter_mut().for_each(|a| *a = 0.0);
            p.iter_mut().for_each(|a| *a = 0.0);
            continue;
        }
        let beta = (rho_new / rho) * (alpha / omega);
        rho = rho_new;
        for i in 0..n {
            p[i] = r[i] + beta * (p[i] - omega * v[i]);
            p_hat[i] = p[i] * m[i];
        }
        sys.matvec(&p_hat, &mut v);
        alpha = rho / dot(&r_hat, &v);
        // s overwrites r
        for i in 0..n {
            r[i] -= alpha * v[i];
        }
        let snorm = norm(&r) / bnorm;
        if snorm <= opts.tol {
            for i in 0..n {
                x[i] += alpha * p_hat[i];
            }
            let rel = norm(&residual(sys, x)) / bnorm;
            return Ok(SolveStats { iterations: it + 1, relative_residual: rel, method: "bicgstab" });
        }
        for i in 0..n {
            s_hat[i] = r[i] * m[i];
        }
        sys.matvec(&s_hat, &mut t);
        let tt = dot(&t, &t);
        omega = if tt > 0.0 { dot(&t, &r) / tt } else { 0.0 };
        for i in 0..n {
            x[i] += alpha * p_hat[i] + omega * s_hat[i];
            r[i] -= omega * t[i];
        }
        rel = norm(&r) / bnorm;
        if !rel.is_finite() {
            return Err(Error::NumericalFailure { message: "bicgstab diverged".into(), residual: rel });
        }
    }
    if rel <= opts.tol {
        return Ok(SolveStats { iterations: opts.max_iter, relative_residual: rel, method: "bicgstab" });
    }
    Err(failure("bicgstab", opts.max_iter, rel))
}
