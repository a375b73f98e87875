//! Analysis of Minkowski norms (Finsler metrics on a single tangent space).
//!
//! - [`norms`]: m-th-root and Riemannian norms, the quartic family, JSON definitions.
//! - [`calculus`]: exact Hessians of `F²` by hyper-dual arithmetic, plus a finite-difference check.
//! - [`tensor`]: the fundamental tensor and the strong-convexity scan.
//! - [`energy`]: relative length/energy, profiles on the indicatrix, critical points.
//! - [`conjecture`]: decides whether `E_X` is minimized at `X / F(X)`, with certificates and sweeps.
//! - [`cli`]: the `minkowski` command-line front end.

pub mod calculus;
pub mod cli;
pub mod closed_form;
pub mod conjecture;
pub mod dual;
pub mod energy;
pub mod error;
pub mod norms;
pub mod poly;
pub mod tensor;

pub use error::{Error, Result};
pub use norms::{Family, MetricDefinition, MinkowskiNorm, MthRootMetric};
