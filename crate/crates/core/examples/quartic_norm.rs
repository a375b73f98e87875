//! Evaluates the quartic family `(y₁⁴ + c y₁²y₂² + y₂⁴)^(1/4)` and traces
//! its unit circle (the indicatrix).
//!
//!     cargo run --example quartic_norm

use std::f64::consts::PI;

use minkowski::MinkowskiNorm;

fn main() -> minkowski::Result<()> {
    let y = [1.0, 2.0];
    for c in [2.0, 3.0, 6.0] {
        let f = MinkowskiNorm::quartic_family(c);
        println!("{f}: F{y:?} = {:.12}", f.eval(&y)?);
    }

    let f = MinkowskiNorm::paper_metric();
    println!("\nindicatrix of {f} (theta, r(theta), point):");
    for k in 0..8 {
        let theta = PI * k as f64 / 4.0;
        let p = f.indicatrix_point(theta)?;
        println!(
            "  {theta:.4}  {:.6}  ({:+.6}, {:+.6})  F = {:.15}",
            f.indicatrix_radius(theta)?,
            p[0],
            p[1],
            f.eval(&p)?
        );
    }
    Ok(())
}
