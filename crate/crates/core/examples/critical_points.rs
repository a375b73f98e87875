//! Locates and classifies every critical point of `E_X` on the indicatrix.
//!
//!     cargo run --example critical_points

use minkowski::energy::find_critical_points;
use minkowski::MinkowskiNorm;

fn main() -> minkowski::Result<()> {
    let f = MinkowskiNorm::paper_metric();
    for x in [[1.0, 0.0], [1.0, 3.0]] {
        println!("X = {x:?}");
        for p in find_critical_points(&f, &x, 4096)? {
            println!(
                "  theta = {:.10}  y = ({:+.6}, {:+.6})  E = {:.12}  {:<11} |dE/dθ| = {:.1e}  lagrange = {:.1e}",
                p.theta,
                p.y[0],
                p.y[1],
                p.energy,
                format!("{:?}", p.kind),
                p.derivative_residual,
                p.lagrange_residual.unwrap_or(f64::NAN)
            );
        }
    }
    Ok(())
}
