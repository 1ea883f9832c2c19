//! Homogeneity exponents of cones.
//!
//! A positive harmonic function on a cone vanishing on its boundary is
//! `r^α₁ f₁(θ)`, where `f₁` is the first Dirichlet eigenfunction of the
//! Laplace–Beltrami operator on the spherical cross-section and
//! `α₁(α₁ + n − 2) = λ₁`. For sectors this is `α_k = kπ/ω`. For right
//! circular cones the axisymmetric eigenproblem
//!
//! ```text
//! (w f')' + λ w f = 0 on (0, θ_c),   w = sin^{n−2} θ,   f(θ_c) = 0
//! ```
//!
//! is solved by shooting from the axis with a two-term Frobenius start and
//! bisection on `α` using the zero count of `f` (Sturm oscillation).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomogeneityReport {
    pub dim: usize,
    /// Full opening for sectors, half-aperture for cones.
    pub aperture: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub lambda1: f64,
    /// Requested mode and its exponent.
    pub k: usize,
    pub alpha_k: f64,
    /// `(θ, f₁(θ))` with `sup f₁ = 1` and `f₁ = 0` at the cap edge.
    pub f1_samples: Vec<(f64, f64)>,
}

impl HomogeneityReport {
    /// Two-column CSV `theta,f1`.
    pub fn f1_csv(&self) -> String {
        let mut s = String::from("theta,f1\n");
        for (t, f) in &self.f1_samples {
            s.push_str(&format!("{t:.17e},{f:.17e}\n"));
        }
        s
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ShootingOptions {
    pub steps: usize,
    pub bisection_iters: usize,
    pub theta_start: f64,
}

impl Default for ShootingOptions {
    fn default() -> Self {
        ShootingOptions { steps: 4096, bisection_iters: 80, theta_start: 1e-6 }
    }
}

/// `kπ/ω` for the planar sector of opening `ω`.
pub fn alpha_sector(opening: f64, k: usize) -> Result<f64> {
    if !(opening > 0.0 && opening < 2.0 * PI) {
        return Err(invalid(format!("opening {opening} outside (0, 2π)")));
    }
    if k == 0 {
        return Err(invalid("mode index starts at 1"));
    }
    Ok(k as f64 * PI / opening)
}

/// Positive root of `α(α + n − 2) = λ`.
pub fn alpha_from_eigenvalue(dim: usize, lambda: f64) -> f64 {
    let b = dim as f64 - 2.0;
    // 2λ / (b + √(b² + 4λ)) avoids cancellation for small λ
    2.0 * lambda / (b + (b * b + 4.0 * lambda).sqrt())
}

pub fn sector_report(opening: f64) -> Result<HomogeneityReport> {
    let alpha1 = alpha_sector(opening, 1)?;
    let n = 4096;
    let f1_samples = (0..=n)
        .map(|i| {
            let t = opening * i as f64 / n as f64;
            let f = if i == n { 0.0 } else { (alpha1 * t).sin() };
            (t, f)
        })
        .collect();
    Ok(HomogeneityReport {
        dim: 2,
        aperture: opening,
        alpha1,
        alpha2: 2.0 * alpha1,
        lambda1: alpha1 * alpha1,
        k: 1,
        alpha_k: alpha1,
        f1_samples,
    })
}

/// Exponents of the right circular cone of half-aperture `half_aperture`.
///
/// `dim = 2` is accepted as the planar sector of opening `2·half_aperture`,
/// shot from one edge instead of the axis.
pub fn alpha_axisymmetric(dim: usize, half_aperture: f64, k: usize) -> Result<HomogeneityReport> {
    alpha_axisymmetric_with(dim, half_aperture, k, ShootingOptions::default())
}

pub fn alpha_axisymmetric_with(
    dim: usize,
    half_aperture: f64,
    k: usize,
    opts: ShootingOptions,
) -> Result<HomogeneityReport> {
    if dim < 2 {
        return Err(invalid("dim must be at least 2"));
    }
    if !(half_aperture > 0.0 && half_aperture < PI) {
        return Err(invalid(format!("half-aperture {half_aperture} outside (0, π)")));
    }
    if k == 0 {
        return Err(invalid("mode index starts at 1"));
    }
    let shooter = Shooter::new(dim, half_aperture, opts);
    let alpha1 = shooter.root(1)?;
    let alpha2 = shooter.root(2)?;
    let alpha_k = match k {
        1 => alpha1,
        2 => alpha2,
        _ => shooter.root(k)?,
    };
    let mut f1_samples = shooter.trajectory(alpha1);
    let sup = f1_samples.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
    for p in f1_samples.iter_mut() {
        p.1 /= sup;
    }
    if let Some(last) = f1_samples.last_mut() {
        last.1 = 0.0;
    }
    Ok(HomogeneityReport {
        dim,
        aperture: half_aperture,
        alpha1,
        alpha2,
        lambda1: alpha1 * (alpha1 + dim as f64 - 2.0),
        k,
        alpha_k,
        f1_samples,
    })
}

/// Aperture with `α₁ = 2`: the full opening for `dim = 2`, the
/// half-aperture otherwise.
pub fn critical_aperture(dim: usize) -> Result<f64> {
    if dim < 2 {
        return Err(invalid("dim must be at least 2"));
    }
    if dim == 2 {
        return Ok(PI / 2.0);
    }
    // α₁(θ) ≤ 2 exactly when the λ = 2n shot already has a zero on (0, θ]
    let (mut lo, mut hi) = (1e-3, PI - 1e-3);
    let opts = ShootingOptions::default();
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if Shooter::new(dim, mid, opts).zero_count(2.0) == 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

struct Shooter {
    dim: usize,
    length: f64,
    opts: ShootingOptions,
}

impl Shooter {
    fn new(dim: usize, half_aperture: f64, opts: ShootingOptions) -> Self {
        let length = if dim == 2 { 2.0 * half_aperture } else { half_aperture };
        Shooter { dim, length, opts }
    }

    fn lambda(&self, alpha: f64) -> f64 {
        alpha * (alpha + self.dim as f64 - 2.0)
    }

    fn start(&self, alpha: f64) -> (f64, f64, f64) {
        if self.dim == 2 {
            (0.0, 0.0, 1.0)
        } else {
            let t0 = self.opts.theta_start;
            let l = self.lambda(alpha);
            let m = self.dim as f64 - 1.0;
            (t0, 1.0 - l * t0 * t0 / (2.0 * m), -l * t0 / m)
        }
    }

    fn rhs(&self, lambda: f64, t: f64, f: f64, g: f64) -> (f64, f64) {
        let drift = if self.dim == 2 { 0.0 } else { (self.dim as f64 - 2.0) * t.cos() / t.sin() };
        (g, -drift * g - lambda * f)
    }

    /// Integrates with classical RK4, calling `visit(θ, f)` at each node.
    fn integrate(&self, alpha: f64, mut visit: impl FnMut(f64, f64)) {
        let lambda = self.lambda(alpha);
        let (t0, mut f, mut g) = self.start(alpha);
        let n = self.opts.steps;
        let dt = (self.length - t0) / n as f64;
        visit(t0, f);
        for i in 0..n {
            let t = t0 + i as f64 * dt;
            let (k1f, k1g) = self.rhs(lambda, t, f, g);
            let (k2f, k2g) = self.rhs(lambda, t + 0.5 * dt, f + 0.5 * dt * k1f, g + 0.5 * dt * k1g);
            let (k3f, k3g) = self.rhs(lambda, t + 0.5 * dt, f + 0.5 * dt * k2f, g + 0.5 * dt * k2g);
            let (k4f, k4g) = self.rhs(lambda, t + dt, f + dt * k3f, g + dt * k3g);
            f += dt / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
            g += dt / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
            let t_next = if i + 1 == n { self.length } else { t0 + (i + 1) as f64 * dt };
            visit(t_next, f);
        }
    }

    /// Sign changes of `f` on `(0, θ_c]`, counting a negative end value.
    fn zero_count(&self, alpha: f64) -> usize {
        let mut count = 0;
        let mut prev: Option<f64> = None;
        self.integrate(alpha, |_, f| {
            if let Some(p) = prev {
                if (p > 0.0 && f <= 0.0) || (p < 0.0 && f >= 0.0) {
                    count += 1;
                }
            }
            // the edge shot starts at f = 0 exactly; skip it
            if f != 0.0 || prev.is_some() {
                prev = Some(f);
            }
        });
        count
    }

    fn root(&self, k: usize) -> Result<f64> {
        let mut lo = 0.0;
        let mut hi = 1.0;
        let mut guard = 0;
        while self.zero_count(hi) < k {
            lo = hi;
            hi *= 2.0;
            guard += 1;
            if guard > 60 {
                return Err(Error::NumericalFailure {
                    message: format!("no bracket for mode {k}"),
                    residual: f64::NAN,
                });
            }
        }
        for _ in 0..self.opts.bisection_iters {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.zero_count(mid) >= k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let width = hi - lo;
        if width > 1e-10 * hi.max(1.0) {
            return Err(Error::NumericalFailure {
                message: format!("bisection for mode {k} did not converge"),
                residual: width,
            });
        }
        Ok(0.5 * (lo + hi))
    }

    fn trajectory(&self, alpha: f64) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.opts.steps + 1);
        self.integrate(alpha, |t, f| out.push((t, f)));
        if self.dim > 2 {
            // regular at the axis: f(0) = f(θ_start) to O(θ_start²)
            out[0] = (0.0, out[0].1);
        }
        out
    }
}

/// Surface measure of the unit sphere `S^m`.
pub fn sphere_measure(m: usize) -> f64 {
    // |S^m| = 2π^{(m+1)/2} / Γ((m+1)/2)
    let half = (m + 1) as f64 / 2.0;
    2.0 * PI.powf(half) / gamma_half_integer(m + 1)
}

/// Γ(j/2) for a positive integer `j`.
fn gamma_half_integer(j: usize) -> f64 {
    let mut g = if j.is_multiple_of(2) { 1.0 } else { PI.sqrt() };
    let mut x = if j.is_multiple_of(2) { 1.0 } else { 0.5 };
    while x < j as f64 / 2.0 - 1e-12 {
        g *= x;
        x += 1.0;
    }
    g
}

/// Finite-volume discretization of `−(w f')'/w` on the cap cross-section
/// with the cap's surface measure, symmetrized as `M^{-1/2} K M^{-1/2}`.
#[derive(Clone, Debug)]
pub struct CapOperator {
    pub dim: usize,
    pub length: f64,
    pub theta: Vec<f64>,
    /// Cell measures including the `|S^{n−2}|` azimuthal factor.
    pub mass: Vec<f64>,
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl CapOperator {
    /// Cap `(0, θ_c)` for `dim ≥ 3` (regular at the axis), interval
    /// `(0, ω)` with two Dirichlet ends for `dim = 2`.
    pub fn new(dim: usize, aperture: f64, nodes: usize) -> Result<Self> {
        if dim < 2 || nodes < 4 {
            return Err(invalid("cap operator needs dim >= 2 and at least 4 nodes"));
        }
        let dt = aperture / nodes as f64;
        let ex = dim as f64 - 2.0;
        let w = |t: f64| if dim == 2 { 1.0 } else { t.sin().powf(ex) };
        let azimuth = if dim == 2 { 1.0 } else { sphere_measure(dim - 2) };
        let theta: Vec<f64> = (0..nodes).map(|i| (i as f64 + 0.5) * dt).collect();
        let mass: Vec<f64> = theta.iter().map(|&t| azimuth * w(t) * dt).collect();
        // stiffness K (symmetric) with face weights; Dirichlet faces use the half-cell distance
        let mut kd = vec![0.0; nodes];
        let mut ko = vec![0.0; nodes - 1];
        for i in 0..=nodes {
            let face = i as f64 * dt;
            let wf = azimuth * w(face);
            if i == 0 {
                if dim == 2 {
                    kd[0] += wf / (0.5 * dt);
                }
            } else if i == nodes {
                kd[nodes - 1] += wf / (0.5 * dt);
            } else {
                let c = wf / dt;
                kd[i - 1] += c;
                kd[i] += c;
                ko[i - 1] -= c;
            }
        }
        let diag = (0..nodes).map(|i| kd[i] / mass[i]).collect();
        let off = (0..nodes - 1).map(|i| ko[i] / (mass[i] * mass[i + 1]).sqrt()).collect();
        Ok(CapOperator { dim, length: aperture, theta, mass, diag, off })
    }

    /// Number of eigenvalues strictly below `x` (Sturm count).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.diag.len() {
            let b2 = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] };
            q = self.diag[i] - x - if i == 0 { 0.0 } else { b2 / q };
            if q == 0.0 {
                q = -1e-300;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// `j`-th smallest eigenvalue (0-based) by bisection on the Sturm count.
    pub fn eigenvalue(&self, j: usize) -> f64 {
        let bound = self
            .diag
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let l = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
                let r = if i + 1 < self.diag.len() { self.off[i].abs() } else { 0.0 };
                d + l + r
            })
            .fold(0.0, f64::max);
        let (mut lo, mut hi) = (0.0, bound);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Eigenvector of the symmetrized operator for the eigenvalue nearest
    /// `shift`, by inverse iteration with Thomas solves. Returned in the
    /// original (unsymmetrized) variables.
    pub fn eigenvector_near(&self, shift: f64) -> Vec<f64> {
        let n = self.diag.len();
        let mut x = vec![1.0; n];
        for _ in 0..8 {
            let mut y = thomas(&self.off, &self.diag, shift, &x);
            let nrm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            for v in y.iter_mut() {
                *v /= nrm;
            }
            x = y;
        }
        for (v, m) in x.iter_mut().zip(&self.mass) {
            *v /= m.sqrt();
        }
        x
    }
}

/// Solves `(T − shift I) y = rhs` for the symmetric tridiagonal `T`.
fn thomas(off: &[f64], diag: &[f64], shift: f64, rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut b = diag[0] - shift;
    c[0] = if n > 1 { off[0] / b } else { 0.0 };
    d[0] = rhs[0] / b;
    for i in 1..n {
        b = diag[i] - shift - off[i - 1] * c[i - 1];
        if i + 1 < n {
            c[i] = off[i] / b;
        }
        d[i] = (rhs[i] - off[i - 1] * d[i - 1]) / b;
    }
    let mut y = vec![0.0; n];
    y[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        y[i] = d[i] - c[i] * y[i + 1];
    }
    y
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FredholmReport {
    pub dim: usize,
    pub aperture: f64,
    /// `(nodes, residual)` under refinement.
    pub refinement: Vec<(usize, f64)>,
    pub residual: f64,
    /// Discrete eigenvalue nearest `2n` on the finest level.
    pub eigenvalue: f64,
}

/// Least-squares obstruction for `(Δ_θ + 2n) g = forcing` on the critical cap
/// discretized with `nodes` cells.
///
/// The discrete operator has an eigenvalue within `O(Δθ²)` of `2n`; treating
/// its eigenvector `φ` as the kernel, the minimal residual over `g` is the
/// size of the forcing's component along `φ`, `|⟨b, φ⟩| / ‖φ‖` in the cap's
/// `L²` inner product.
pub fn fredholm_residual_with(
    dim: usize,
    aperture: f64,
    nodes: usize,
    forcing: impl Fn(f64) -> f64,
) -> Result<(f64, f64)> {
    let op = CapOperator::new(dim, aperture, nodes)?;
    let target = 2.0 * dim as f64;
    let j = op.count_below(target);
    // nearest eigenvalue is either the j-th or the (j-1)-th
    let above = op.eigenvalue(j);
    let below = if j > 0 { op.eigenvalue(j - 1) } else { f64::INFINITY };
    let mu = if (above - target).abs() < (below - target).abs() { above } else { below };
    let phi = op.eigenvector_near(mu + 1e-9 * mu.abs().max(1.0));
    let mut ip = 0.0;
    let mut nrm = 0.0;
    for i in 0..nodes {
        ip += op.mass[i] * forcing(op.theta[i]) * phi[i];
        nrm += op.mass[i] * phi[i] * phi[i];
    }
    Ok((ip.abs() / nrm.sqrt(), mu))
}

/// Obstruction residual for the constant forcing `−1` on the critical cap,
/// reported on a refinement ladder `512·2^j` nodes.
pub fn fredholm_residual(dim: usize) -> Result<FredholmReport> {
    let aperture = critical_aperture(dim)?;
    let mut refinement = Vec::new();
    let mut eigenvalue = f64::NAN;
    for j in 0..5 {
        let nodes = 512usize << j;
        let (r, mu) = fredholm_residual_with(dim, aperture, nodes, |_| -1.0)?;
        refinement.push((nodes, r));
        eigenvalue = mu;
    }
    let residual = refinement.last().unwrap().1;
    Ok(FredholmReport { dim, aperture, refinement, residual, eigenvalue })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn sector_exponents() {
        assert_eq!(alpha_sector(PI / 4.0, 1).unwrap(), 4.0);
        assert_eq!(alpha_sector(PI, 1).unwrap(), 1.0);
        assert_abs_diff_eq!(alpha_sector(3.0 * PI / 4.0, 1).unwrap(), 4.0 / 3.0, epsilon = 1e-15);
        assert!(alpha_sector(0.0, 1).is_err());
        assert!(alpha_sector(1.0, 0).is_err());
    }

    #[test]
    fn eigenvalue_dictionary() {
        assert_abs_diff_eq!(alpha_from_eigenvalue(3, 2.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(alpha_from_eigenvalue(2, 4.0), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(alpha_from_eigenvalue(4, 8.0), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn half_space_exponent() {
        let r = alpha_axisymmetric(3, PI / 2.0, 1).unwrap();
        assert_abs_diff_eq!(r.alpha1, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(r.lambda1, 2.0, epsilon = 1e-7);
        // second axisymmetric mode of the hemisphere is P₃: α = 3
        assert_abs_diff_eq!(r.alpha2, 3.0, epsilon = 1e-7);
    }

    #[test]
    fn legendre_cap_exponent() {
        let r = alpha_axisymmetric(3, (1.0 / 3f64.sqrt()).acos(), 1).unwrap();
        assert_abs_diff_eq!(r.alpha1, 2.0, epsilon = 1e-8);
    }

    #[test]
    fn step_halving_agrees() {
        for &(n, t) in &[(3usize, PI / 3.0), (4, 1.0), (3, 2.5)] {
            let a = alpha_axisymmetric(n, t, 1).unwrap().alpha1;
            let opts = ShootingOptions { steps: 8192, ..Default::default() };
            let b = alpha_axisymmetric_with(n, t, 1, opts).unwrap().alpha1;
            assert!((a - b).abs() < 1e-8, "dim {n} θ {t}: {a} vs {b}");
        }
    }

    #[test]
    fn planar_limit_of_the_shooter() {
        for &w in &[0.7, PI / 2.0, 3.0 * PI / 4.0, 1.5 * PI] {
            let shoot = alpha_axisymmetric(2, w / 2.0, 1).unwrap().alpha1;
            assert_abs_diff_eq!(shoot, alpha_sector(w, 1).unwrap(), epsilon = 1e-6);
        }
    }

    #[test]
    fn cone_slope_agrees_with_aperture() {
        let cone = crate::geometry::make_cone(3, 1.0).unwrap();
        let a = alpha_axisymmetric(3, cone.half_aperture(), 1).unwrap().alpha1;
        let b = alpha_axisymmetric(3, PI / 4.0, 1).unwrap().alpha1;
        assert_abs_diff_eq!(a, b, epsilon = 1e-12);
    }

    #[test]
    fn exponent_decreases_with_aperture() {
        let mut prev = f64::INFINITY;
        for i in 1..12 {
            let t = i as f64 * PI / 12.5;
            let a = alpha_axisymmetric(3, t, 1).unwrap().alpha1;
            assert!(a < prev);
            prev = a;
        }
    }

    #[test]
    fn first_eigenfunction_positive() {
        let r = alpha_axisymmetric(3, 1.2, 1).unwrap();
        let n = r.f1_samples.len();
        assert!(r.f1_samples[..n - 1].iter().all(|p| p.1 > 0.0));
        assert_eq!(r.f1_samples[n - 1].1, 0.0);
        let sup = r.f1_samples.iter().map(|p| p.1).fold(0.0, f64::max);
        assert_abs_diff_eq!(sup, 1.0, epsilon = 1e-15);
        assert!(r.alpha2 > r.alpha1);
        assert_abs_diff_eq!(r.alpha1 * (r.alpha1 + 1.0), r.lambda1, epsilon = 1e-9);
    }

    #[test]
    fn critical_apertures() {
        assert_abs_diff_eq!(critical_aperture(2).unwrap(), PI / 2.0, epsilon = 1e-8);
        assert_abs_diff_eq!(critical_aperture(3).unwrap(), (1.0 / 3f64.sqrt()).acos(), epsilon = 1e-7);
    }

    #[test]
    fn sphere_measures() {
        assert_abs_diff_eq!(sphere_measure(1), 2.0 * PI, epsilon = 1e-14);
        assert_abs_diff_eq!(sphere_measure(2), 4.0 * PI, epsilon = 1e-14);
        assert_abs_diff_eq!(sphere_measure(3), 2.0 * PI * PI, epsilon = 1e-13);
    }

    #[test]
    fn solvable_forcing_has_no_obstruction() {
        // sin 4θ is orthogonal to sin 2θ on (0, π/2)
        let (r, _) = fredholm_residual_with(2, PI / 2.0, 4096, |t| (4.0 * t).sin()).unwrap();
        assert!(r < 1e-6, "{r}");
        // 1 − c P₂(cos θ) orthogonal to P₂ on the critical cap
        let tc = (1.0 / 3f64.sqrt()).acos();
        let p2 = |t: f64| (3.0 * t.cos().powi(2) - 1.0) / 2.0;
        let s0 = 1.0 / 3f64.sqrt();
        // ∫ P₂ ds and ∫ P₂² ds over s = cos θ ∈ (1/√3, 1)
        let int_p2 = -(s0.powi(3) - s0) / 2.0;
        let prim = |s: f64| (9.0 * s.powi(5) / 5.0 - 2.0 * s.powi(3) + s) / 4.0;
        let int_p22 = prim(1.0) - prim(s0);
        let c = int_p2 / int_p22;
        let (r, _) = fredholm_residual_with(3, tc, 4096, |t| 1.0 - c * p2(t)).unwrap();
        assert!(r < 1e-6, "{r}");
    }

    proptest! {
        #[test]
        fn alpha_round_trip(alpha in 1e-3f64..10.0, dim in 2usize..=6) {
            let lambda = alpha * (alpha + dim as f64 - 2.0);
            prop_assert!((alpha_from_eigenvalue(dim, lambda) - alpha).abs() < 1e-12);
        }
    }
}
