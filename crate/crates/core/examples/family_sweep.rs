//! How often the minimum sits away from `X/F(X)` across the quartic family.
//!
//!     cargo run --release --example family_sweep

use minkowski::conjecture::sweep_family;

fn main() -> minkowski::Result<()> {
    let cs = [-1.0, 0.5, 1.0, 1.5, 2.0, 2.1, 2.5, 3.0, 4.0, 6.0, 12.0];
    let summary = sweep_family(&cs, 16, 2048)?;
    println!("{:>6}  {:>9}  {:>10}  {:>8}  common critical angles", "c", "convexity", "min eig", "refuted");
    for e in &summary.entries {
        let angles: Vec<String> = e.common_critical_angles.iter().map(|t| format!("{t:.4}")).collect();
        println!(
            "{:>6}  {:>9}  {:>10.4}  {:>8}  {}",
            e.c,
            e.convexity_pass,
            e.min_eigenvalue.unwrap_or(f64::NAN),
            format!("{}/{}", e.refuted, e.evaluated),
            angles.join(" ")
        );
    }
    Ok(())
}
