//! Primes, lcm sequences, the carry functions `φ(x, y)` / `φ₀(x)`, the
//! cancellation factor `Φ_n` and digamma values at rationals.

pub mod carry;
pub mod digamma;
pub mod factored;
pub mod phi;
pub mod sieve;

pub use carry::{carry_min_table, carry_value, CarrySpec, StepFunction};
pub use digamma::{digamma_rational, digamma_series, euler_gamma, kappa};
pub use factored::FactoredInteger;
pub use phi::{capital_phi, phi_exponent, phi_exponent_of_table, sieved_log_phi_over_n};
pub use sieve::{lcm_up_to, sieve_primes};
