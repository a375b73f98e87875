//! Strong convexity (positive definiteness of `g`) across the quartic family.
//!
//!     cargo run --release --example convexity

use minkowski::tensor::check_strong_convexity;
use minkowski::MinkowskiNorm;

fn main() -> minkowski::Result<()> {
    println!("{:>6}  {:>6}  {:>14}  {:>10}", "c", "pass", "min eigenvalue", "at theta");
    for c in [-1.5, 0.0, 1.0, 2.0, 3.0, 5.0, 6.0, 8.0, 12.0] {
        let r = check_strong_convexity(&MinkowskiNorm::quartic_family(c), 4096)?;
        println!("{c:>6}  {:>6}  {:>14.6}  {:>10.6}", r.pass, r.min_eigenvalue, r.argmin_angle);
    }

    let r = check_strong_convexity(&MinkowskiNorm::paper_metric(), 4096)?;
    if let Some(cf) = r.closed_form {
        println!(
            "\nc = 3 against its closed forms: max rel error trace {:.1e}, det {:.1e}",
            cf.max_trace_rel_error, cf.max_det_rel_error
        );
    }
    Ok(())
}
