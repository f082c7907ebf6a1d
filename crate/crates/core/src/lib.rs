//! Exact computer algebra for the W3 algebra at central charge `-2`:
//! PBW normal ordering with the nonlinear `Lambda` term, singular vectors of
//! the vacuum module, reduction to the Zhu algebra `C[t, w]`, free boson and
//! `bc` realizations, and the centrally extended algebra of differential
//! operators on the circle.
//!
//! Everything is exact: rationals are arbitrary precision and no floating
//! point is used anywhere.

pub mod checks;
pub mod error;
pub mod exact;
pub mod freefield;
pub mod singvec;
pub mod w3core;
pub mod winf;
pub mod zhu;

pub use error::{Error, Result};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
