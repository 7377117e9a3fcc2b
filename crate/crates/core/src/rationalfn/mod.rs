//! The rational functions `R_n` of both families and their partial fractions.

mod blocks;
mod partial;
mod product;
pub mod profile;

pub use blocks::{
    binomial_block_coefficients, binomial_block_rep, hypergeometric_parameters, uniform_top_coefficient,
    symmetry_check, HypergeometricParameters,
};
pub use partial::{partial_fractions, partial_fractions_with, PartialFractionTable, Pole};
pub use product::{
    build, build_general, build_companion, build_uniform, gamma_n, companion_identity_check, LinearProductRep,
};
