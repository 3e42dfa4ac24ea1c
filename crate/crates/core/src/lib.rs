//! Exact archimedean verification tools for Rankin-Selberg periods on
//! `GL(n) x GL(n-1)`: weights and balanced places, archimedean `L`- and
//! `gamma`-factors as formal Gamma products, the period constant `Omega`,
//! the open-orbit matrices `z_n`, and cyclotomic Gauss sums.

pub mod characters;
pub mod cli;
pub mod corpus;
pub mod cyclotomic;
pub mod error;
pub mod gamma;
pub mod halfint;
pub mod local_factors;
pub mod orbit;
pub mod period;
pub mod weights;

pub use error::{Error, Result};
pub use halfint::HalfInt;
