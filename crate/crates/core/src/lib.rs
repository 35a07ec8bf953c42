//! Exact verification, classification and normalization of first-order
//! Hamiltonian operators of hydrodynamic type.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod exact;
pub mod frobenius;
pub mod pencil;
pub mod tensor;

pub use error::{Error, Result};
