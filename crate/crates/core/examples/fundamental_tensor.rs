//! The fundamental tensor `g = ½∇²(F²)` from exact second derivatives,
//! compared with a central finite-difference Hessian.
//!
//!     cargo run --example fundamental_tensor

use minkowski::calculus::{default_step, finite_difference_hessian, jet_of_norm_squared};
use minkowski::tensor::fundamental_tensor;
use minkowski::MinkowskiNorm;

fn main() -> minkowski::Result<()> {
    let f = MinkowskiNorm::paper_metric();
    for y in [[1.0, 0.0], [1.0, 1.0], [0.6, 0.8], [-2.0, 0.5]] {
        let jet = jet_of_norm_squared(&f, &y)?;
        let fd = finite_difference_hessian(&f, &y, default_step(&y))?;
        let g = fundamental_tensor(&f, &y)?;
        println!("y = {y:?}");
        println!("  F²       = {:.12}", jet.value);
        println!("  ∇F²      = [{:.12}, {:.12}]", jet.grad[0], jet.grad[1]);
        println!(
            "  g        = [[{:.12}, {:.12}], [{:.12}, {:.12}]]",
            g.g[(0, 0)],
            g.g[(0, 1)],
            g.g[(1, 0)],
            g.g[(1, 1)]
        );
        println!("  trace    = {:.12}   det = {:.12}   min eigenvalue = {:.12}", g.trace, g.det, g.min_eigenvalue);
        println!("  |jet − finite differences| = {:.2e}", (jet.hess - fd).abs().max());
    }

    // g is defined in any dimension
    let f = MinkowskiNorm::riemannian(3, &[2.0, 0.5, 0.0, 0.5, 1.0, 0.0, 0.0, 0.0, 3.0])?;
    let g = fundamental_tensor(&f, &[0.2, -1.0, 0.7])?;
    println!("\n{f}: det g = {:.12} (expected 5.25), min eigenvalue = {:.12}", g.det, g.min_eigenvalue);
    Ok(())
}
