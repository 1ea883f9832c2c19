use std::sync::Arc;

use super::{assemble, solve_with, CoefficientField, Dirichlet, RhsSpec, ScalarField, SolveOptions};
use crate::error::Result;
use crate::geometry::{rasterize, DomainKind, DomainSpec};

#[derive(Clone, Debug)]
pub struct PairOptions {
    pub gamma: f64,
    pub h: f64,
    pub coefficients: CoefficientField,
    pub solver: SolveOptions,
    /// Overrides the default right-hand side of `v`.
    pub rhs: Option<RhsSpec>,
}

impl PairOptions {
    pub fn new(gamma: f64, h: f64) -> Self {
        PairOptions { gamma, h, coefficients: CoefficientField::identity(), solver: SolveOptions::default(), rhs: None }
    }
}

/// The comparison pair on `Ω ∩ B_R`: `L u = 0` and `L v = rhs`, both equal
/// to `0` on the lateral boundary and `1` on the outer sphere.
///
/// The default right-hand side of `v` is `−|x|^γ` on cones and sectors and
/// `−dist(x, ∂Ω)^γ` on Lipschitz graphs.
pub fn solve_pair(spec: &DomainSpec, gamma: f64, h: f64) -> Result<(ScalarField, ScalarField)> {
    solve_pair_with(spec, &PairOptions::new(gamma, h))
}

pub fn solve_pair_with(spec: &DomainSpec, opts: &PairOptions) -> Result<(ScalarField, ScalarField)> {
    let rhs = opts.rhs.unwrap_or(match spec.kind() {
        DomainKind::LipschitzGraph => RhsSpec::distance_power(-1.0, opts.gamma),
        _ => RhsSpec::radial_power(-1.0, opts.gamma),
    });
    rhs.validate(spec.dim())?;
    let grid = Arc::new(rasterize(spec, opts.h)?);
    let data = Dirichlet::lateral_outer(0.0, 1.0);
    let su = assemble(grid.clone(), &opts.coefficients, &RhsSpec::zero(), data.clone())?;
    let sv = assemble(grid, &opts.coefficients, &rhs, data)?;
    let (u, v) = rayon::join(|| solve_with(&su, opts.solver, None), || solve_with(&sv, opts.solver, None));
    Ok((u?.0, v?.0))
}
