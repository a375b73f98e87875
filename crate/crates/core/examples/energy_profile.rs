//! Writes the relative energy `E_X(θ)` along the indicatrix as CSV, ready
//! for plotting.
//!
//!     cargo run --example energy_profile -- 1 3 > profile.csv

use minkowski::energy::{energy_profile, multiples_of};
use minkowski::MinkowskiNorm;

fn main() -> minkowski::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let x = match args[..] {
        [x1, x2] => [x1, x2],
        _ => [1.0, 3.0],
    };
    let f = MinkowskiNorm::paper_metric();
    let profile = energy_profile(&f, &x, 1024)?;
    print!("{}", profile.to_csv());

    let (imin, min) = profile.min();
    let (imax, max) = profile.max();
    eprintln!("X = {x:?} on {f}");
    eprintln!("  min {min:.10} at theta = {:.6}", profile.angles[imin]);
    eprintln!("  max {max:.10} at theta = {:.6}", profile.angles[imax]);
    eprintln!("  multiples of X at theta = {:?}", multiples_of(x));
    Ok(())
}
