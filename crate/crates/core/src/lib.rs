//! Numerical laboratory for the exact dynamics of the infinite harmonic
//! chain q̈ₖ = ω₁²(qₖ₊₁ − 2qₖ + qₖ₋₁): Bessel-kernel propagation, growth
//! envelopes, constructive √t lower bounds, and the stochastic/Gaussian
//! limit experiments.

// Negated comparisons (`!(x > 0.0)`) are deliberate: NaN must fail the
// check. Pinned reference constants keep their full published digits.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]

pub mod adversarial;
pub mod bessel;
pub mod bounds;
pub mod error;
pub mod finite_oracle;
pub mod gaussian;
pub mod lattice;
pub mod propagator;
pub mod report;
pub mod rng;
pub mod stats;
pub mod stochastic;

pub use bessel::{bessel_j, bessel_j_oracle, bessel_row, BesselRow};
pub use error::{Error, Result};
pub use lattice::{Fill, LatticeWindow};
pub use propagator::KernelRow;
pub use report::{Assertion, ExperimentReport};
