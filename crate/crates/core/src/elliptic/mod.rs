//! Cut-cell finite differences for `L v = a_ij D_ij v + b_i D_i v + c v = f`
//! with Dirichlet data, Krylov solvers, and projected SOR for the obstacle
//! problem.

mod assemble;
mod field;
mod krylov;
mod obstacle;
mod pair;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::geometry::{BoundaryPart, GridDomain};

pub use assemble::{assemble, assemble_with_values, LinearSystem};
pub use field::{read_binary, BinaryField, ScalarField};
pub use krylov::{solve, solve_with, SolveOptions, SolveStats};
pub use obstacle::{psor, solve_obstacle, PsorOptions, PsorStats};
pub use pair::{solve_pair, solve_pair_with, PairOptions};

/// Coefficients at one point. The principal part is diagonal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointCoefficients {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub c: f64,
}

impl PointCoefficients {
    pub const LAPLACE: PointCoefficients = PointCoefficients { a: [1.0; 3], b: [0.0; 3], c: 0.0 };
}

/// Serializable description of a coefficient field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CoefficientSpec {
    Identity,
    /// Diagonal `a` alternating between `low·I` and `high·I` on cubes of
    /// side `block`, with constant drift `b` and zero-order term `c`.
    Checkerboard {
        block: f64,
        low: f64,
        high: f64,
        #[serde(default)]
        b: [f64; 3],
        #[serde(default)]
        c: f64,
    },
}

type CoefficientFn = dyn Fn(&[f64; 3]) -> PointCoefficients + Send + Sync;

/// Coefficient field with ellipticity constant `lambda`:
/// `a_ii ∈ [1/λ, λ]`, `Σ|b_i| ≤ λ − 1`, `−(λ − 1) ≤ c ≤ 0`.
#[derive(Clone)]
pub struct CoefficientField {
    pub lambda: f64,
    sample: Arc<CoefficientFn>,
    label: String,
    symmetric_hint: bool,
}

impl fmt::Debug for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientField").field("lambda", &self.lambda).field("label", &self.label).finish()
    }
}

impl CoefficientField {
    pub fn identity() -> Self {
        CoefficientField {
            lambda: 1.0,
            sample: Arc::new(|_| PointCoefficients::LAPLACE),
            label: "identity".into(),
            symmetric_hint: true,
        }
    }

    pub fn checkerboard(block: f64, low: f64, high: f64, b: [f64; 3], c: f64) -> Result<Self> {
        if !(block > 0.0) || !(low > 0.0) || !(high > 0.0) {
            return Err(invalid("checkerboard needs positive block size and levels"));
        }
        if c > 0.0 {
            return Err(invalid("zero-order coefficient must be nonpositive"));
        }
        let drift: f64 = b.iter().map(|x| x.abs()).sum();
        let lambda = high.max(1.0 / low).max(low).max(1.0 / high).max(1.0 + drift).max(1.0 - c);
        let sample = move |x: &[f64; 3]| {
            let parity: i64 = x.iter().map(|v| (v / block).floor() as i64).sum();
            let s = if parity.rem_euclid(2) == 0 { low } else { high };
            PointCoefficients { a: [s; 3], b, c }
        };
        Ok(CoefficientField {
            lambda,
            sample: Arc::new(sample),
            label: format!("checkerboard(block={block}, low={low}, high={high}, c={c})"),
            symmetric_hint: drift == 0.0,
        })
    }

    /// Arbitrary field; `lambda` is the claimed ellipticity constant and is
    /// checked pointwise during assembly.
    pub fn from_fn(
        lambda: f64,
        label: impl Into<String>,
        f: impl Fn(&[f64; 3]) -> PointCoefficients + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(lambda >= 1.0) {
            return Err(invalid("ellipticity constant must be at least 1"));
        }
        Ok(CoefficientField { lambda, sample: Arc::new(f), label: label.into(), symmetric_hint: false })
    }

    pub fn from_spec(spec: &CoefficientSpec) -> Result<Self> {
        match spec {
            CoefficientSpec::Identity => Ok(Self::identity()),
            CoefficientSpec::Checkerboard { block, low, high, b, c } => Self::checkerboard(*block, *low, *high, *b, *c),
        }
    }

    pub fn at(&self, x: &[f64; 3]) -> PointCoefficients {
        (self.sample)(x)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub(crate) fn check(&self, p: &PointCoefficients, dim: usize) -> Result<()> {
        let tol = 1e-12;
        let lam = self.lambda;
        let a_ok = p.a[..dim].iter().all(|&a| a >= 1.0 / lam - tol && a <= lam + tol);
        let drift: f64 = p.b[..dim].iter().map(|b| b.abs()).sum();
        if !a_ok || drift > lam - 1.0 + tol || p.c > 0.0 || p.c < -(lam - 1.0) - tol {
            return Err(invalid(format!("coefficients {p:?} violate ellipticity constant {lam}")));
        }
        Ok(())
    }

    pub(crate) fn maybe_symmetric(&self) -> bool {
        self.symmetric_hint
    }
}

impl Default for CoefficientField {
    fn default() -> Self {
        Self::identity()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RhsKind {
    Zero,
    Constant,
    /// `amplitude · |x|^γ`
    RadialPower,
    /// `amplitude · dist(x, ∂Ω)^γ` with the lateral boundary distance.
    DistancePower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RhsSign {
    Nonpositive,
    Nonnegative,
    Signed,
}

/// Right-hand side family. Power profiles are clipped at `h/2` from their
/// singular set so that grid nodes never see an infinite value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhsSpec {
    pub kind: RhsKind,
    #[serde(default)]
    pub gamma: f64,
    #[serde(default = "one")]
    pub amplitude: f64,
    #[serde(default = "signed")]
    pub sign: RhsSign,
}

fn one() -> f64 {
    1.0
}

fn signed() -> RhsSign {
    RhsSign::Signed
}

impl RhsSpec {
    pub fn zero() -> Self {
        RhsSpec { kind: RhsKind::Zero, gamma: 0.0, amplitude: 0.0, sign: RhsSign::Signed }
    }

    pub fn constant(amplitude: f64) -> Self {
        RhsSpec { kind: RhsKind::Constant, gamma: 0.0, amplitude, sign: sign_of(amplitude) }
    }

    pub fn radial_power(amplitude: f64, gamma: f64) -> Self {
        RhsSpec { kind: RhsKind::RadialPower, gamma, amplitude, sign: sign_of(amplitude) }
    }

    pub fn distance_power(amplitude: f64, gamma: f64) -> Self {
        RhsSpec { kind: RhsKind::DistancePower, gamma, amplitude, sign: sign_of(amplitude) }
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if !self.gamma.is_finite() || !self.amplitude.is_finite() {
            return Err(invalid("right-hand side parameters must be finite"));
        }
        if self.kind == RhsKind::DistancePower && self.gamma <= -2.0 / dim as f64 {
            return Err(invalid(format!(
                "distance power γ = {} must exceed −2/n = {}",
                self.gamma,
                -2.0 / dim as f64
            )));
        }
        if self.kind == RhsKind::RadialPower && self.gamma <= -(dim as f64) {
            return Err(invalid(format!("radial power γ = {} is not locally integrable", self.gamma)));
        }
        match self.sign {
            RhsSign::Nonpositive if self.amplitude > 0.0 => Err(invalid("amplitude contradicts nonpositive sign")),
            RhsSign::Nonnegative if self.amplitude < 0.0 => Err(invalid("amplitude contradicts nonnegative sign")),
            _ => Ok(()),
        }
    }

    /// Value at `x` on `grid`.
    pub fn value(&self, grid: &GridDomain, x: &[f64; 3]) -> f64 {
        let floor = 0.5 * grid.h;
        match self.kind {
            RhsKind::Zero => 0.0,
            RhsKind::Constant => self.amplitude,
            RhsKind::RadialPower => {
                let r = x[..grid.dim].iter().map(|v| v * v).sum::<f64>().sqrt();
                self.amplitude * r.max(floor).powf(self.gamma)
            }
            RhsKind::DistancePower => {
                let d = -grid.spec().signed_distance(&x[..grid.dim]);
                self.amplitude * d.max(floor).powf(self.gamma)
            }
        }
    }
}

fn sign_of(a: f64) -> RhsSign {
    if a < 0.0 {
        RhsSign::Nonpositive
    } else if a > 0.0 {
        RhsSign::Nonnegative
    } else {
        RhsSign::Signed
    }
}

type BoundaryFn = dyn Fn(&[f64; 3], BoundaryPart) -> f64 + Send + Sync;

/// Dirichlet data on the boundary of a rasterized region.
#[derive(Clone)]
pub enum Dirichlet {
    Zero,
    /// Constant on each boundary part.
    Parts { lateral: f64, outer: f64, clip: f64 },
    Function { label: String, f: Arc<BoundaryFn> },
}

impl fmt::Debug for Dirichlet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl Dirichlet {
    /// `lateral` on the lateral boundary, `outer` on the outer sphere (and
    /// on any clipping sphere).
    pub fn lateral_outer(lateral: f64, outer: f64) -> Self {
        Dirichlet::Parts { lateral, outer, clip: outer }
    }

    pub fn function(
        label: impl Into<String>,
        f: impl Fn(&[f64; 3], BoundaryPart) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Dirichlet::Function { label: label.into(), f: Arc::new(f) }
    }

    pub fn value(&self, x: &[f64; 3], part: BoundaryPart) -> f64 {
        match self {
            Dirichlet::Zero => 0.0,
            Dirichlet::Parts { lateral, outer, clip } => match part {
                BoundaryPart::Lateral => *lateral,
                BoundaryPart::Outer => *outer,
                BoundaryPart::Clip => *clip,
            },
            Dirichlet::Function { f, .. } => f(x, part),
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        match self {
            Dirichlet::Zero => Dirichlet::Zero,
            Dirichlet::Parts { lateral, outer, clip } => {
                Dirichlet::Parts { lateral: lateral * s, outer: outer * s, clip: clip * s }
            }
            Dirichlet::Function { label, f } => {
                let f = f.clone();
                Dirichlet::Function { label: format!("{s}·{label}"), f: Arc::new(move |x, p| s * f(x, p)) }
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Dirichlet::Zero => "zero".into(),
            Dirichlet::Parts { lateral, outer, clip } => {
                format!("lateral={lateral}, outer={outer}, clip={clip}")
            }
            Dirichlet::Function { label, .. } => label.clone(),
        }
    }
}
