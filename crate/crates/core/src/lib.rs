//! Exact rational linear forms in even Dirichlet beta values.
//!
//! The crate builds two families of rational functions whose alternating
//! sums over half-integers are small linear forms in `β(2), β(4), …`, computes
//! their exact partial-fraction tables, assembles the forms, certifies the
//! prime-power denominator bounds at concrete `n`, and evaluates the growth
//! exponents that decide the irrationality criterion.
//!
//! Module map:
//!
//! * [`numtheory`] primes, `d_m`, the carry functions `φ`/`φ₀`, `Φ_n`, digamma.
//! * [`rationalfn`] profiles, the rational functions and their partial fractions.
//! * [`decomposition`] the linear form `a_0 + Σ a_i β(i)` and its inclusions.
//! * [`numerics`] ball arithmetic, `β(i)`, the alternating series, Monte Carlo.
//! * [`asymptotics`] root isolation, exponents and the verdict ledger.

pub mod asymptotics;
pub mod decomposition;
mod error;
pub mod exec;
pub mod numerics;
pub mod numtheory;
pub mod rationalfn;

pub use error::{Error, Result};
pub use exec::Mode;
pub use numerics::ball::BallReal;
pub use rationalfn::profile::{Family, Profile};

/// Arbitrary-size rational used throughout the exact pipeline.
pub type Rational = num_rational::BigRational;
