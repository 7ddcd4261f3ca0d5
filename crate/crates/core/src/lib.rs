//! Optimal (r, δ) locally repairable codes built from matrix-product codes.

pub mod error;
pub mod galois;
pub mod locality;
pub mod code;
pub mod codefile;
pub mod constructions;
pub mod matrix;
pub mod mds;
pub mod product;

pub use error::{Error, Result};
