//! Metrics beyond the quartic family: one loaded from JSON and one supplied
//! as code through `CustomNorm`.
//!
//!     cargo run --example custom_metric

use std::sync::Arc;

use minkowski::conjecture::test_conjecture;
use minkowski::dual::{HyperDual, Real};
use minkowski::norms::CustomNorm;
use minkowski::tensor::check_strong_convexity;
use minkowski::{MetricDefinition, MinkowskiNorm};

/// `√(y₁² + y₂²) + b·y₁`, strongly convex for `|b| < 1` but not reversible.
#[derive(Debug)]
struct Randers {
    b: f64,
}

impl Randers {
    fn f<T: Real>(&self, y: &[T]) -> T {
        (y[0] * y[0] + y[1] * y[1]).sqrt() + T::constant(self.b) * y[0]
    }
}

impl CustomNorm for Randers {
    fn eval(&self, y: &[f64]) -> f64 {
        self.f(y)
    }
    fn eval_hyper(&self, y: &[HyperDual]) -> HyperDual {
        self.f(y)
    }
}

fn main() -> minkowski::Result<()> {
    // (y₁⁶ + 3y₁⁴y₂² + 3y₁²y₂⁴ + 2y₂⁶)^(1/6)
    let json = r#"{
        "dimension": 2,
        "m": 6,
        "coeffs": [
            {"powers": [6, 0], "value": 1.0},
            {"powers": [4, 2], "value": 3.0},
            {"powers": [2, 4], "value": 3.0},
            {"powers": [0, 6], "value": 2.0}
        ]
    }"#;
    let sextic = MetricDefinition::from_json(json)?.to_norm()?;
    let randers = MinkowskiNorm::custom(2, Arc::new(Randers { b: 0.4 }), "randers b=0.4");

    for f in [sextic, randers] {
        let conv = check_strong_convexity(&f, 4096)?;
        println!("{f} ({:?}): convex = {}, min eigenvalue {:.6}", f.family(), conv.pass, conv.min_eigenvalue);
        for x in [[1.0, 0.0], [1.0, 3.0], [-1.0, 0.5]] {
            let r = test_conjecture(&f, &x, 4096)?;
            println!(
                "  X = {x:?}: {:?}, margin {:.3e}, certificate: {}",
                r.verdict,
                r.margin,
                if r.certificate.is_some() { "yes" } else { "no" }
            );
        }
    }
    Ok(())
}
