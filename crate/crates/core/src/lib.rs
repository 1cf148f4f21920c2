//! Exact computations in the partition, Brauer and Temperley–Lieb diagram
//! categories, their zero-one matrix representations over semirings, and
//! brute-force checks of the identities those representations satisfy.

pub mod diagram;
pub mod error;
pub mod linear;
pub mod rep;
pub mod semiring;
pub mod verify;

pub use error::{Error, Result};
