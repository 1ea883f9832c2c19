//! On the critical cap, where `λ₁ = 2n`, the constant forcing is not
//! orthogonal to the first eigenfunction; the least-squares residual
//! measures the obstruction.

use harnack_lab::spectral::fredholm_residual;

fn main() -> harnack_lab::Result<()> {
    for n in [2, 3, 4] {
        let rep = fredholm_residual(n)?;
        println!("n = {n}  cap half-aperture = {:.8}  nearest eigenvalue = {:.6}", rep.aperture, rep.eigenvalue);
        for (nodes, r) in &rep.refinement {
            println!("  {nodes:>6} nodes: residual = {r:.10}");
        }
    }
    Ok(())
}
