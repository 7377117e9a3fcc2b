//! Ball arithmetic and high-precision evaluation: `β(i)`, the alternating
//! series for `r_n`, the integral by Monte Carlo, and the decomposition oracle.

pub mod accel;
pub mod ball;
pub mod beta;
pub mod elementary;
pub mod mag;
pub mod mc;
pub mod series;

pub use beta::beta_value;
pub use mc::mc_integral;
pub use series::{consistency_check, form_value, r_n_series, summation_start_check, ConsistencyReport, SeriesSetup};
