//! Exact checks for braidings, their quadratic algebras and quantum Fock doubles over `ℚ(q)`.

#![allow(clippy::needless_range_loop)]

pub mod braiding;
pub mod cli;
pub mod currents;
pub mod error;
pub mod fock;
pub mod guide;
pub mod quadalgebra;
pub mod report;
pub mod scalar;
pub mod tensor;

pub use braiding::Braiding;
pub use error::{Error, Result};
pub use scalar::Scalar;
