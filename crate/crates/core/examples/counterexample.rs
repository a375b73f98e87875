//! Tests whether `E_X` is minimized at `X/F(X)`, then writes and re-checks a
//! counterexample certificate.
//!
//!     cargo run --example counterexample

use minkowski::conjecture::{test_conjecture, CounterexampleCertificate};
use minkowski::MinkowskiNorm;

fn main() -> minkowski::Result<()> {
    for (f, x) in [(MinkowskiNorm::quartic_family(2.0), [1.0, 3.0]), (MinkowskiNorm::paper_metric(), [1.0, 3.0])] {
        let r = test_conjecture(&f, &x, 4096)?;
        println!(
            "{f}, X = {x:?}: {:?}  self energy {:.10}, global min {:.10} at theta = {:.6}, margin {:.3e}",
            r.verdict, r.self_energy, r.global_min, r.global_min_location.theta, r.margin
        );
        if let Some(cert) = r.certificate {
            let json = cert.to_json()?;
            println!("{json}");
            let check = CounterexampleCertificate::from_json(&json)?.verify()?;
            println!(
                "recomputed: F(witness) = {:.15}, margin = {:.12}, valid = {}",
                check.witness_norm,
                check.margin,
                check.is_valid()
            );
        }
    }
    Ok(())
}
