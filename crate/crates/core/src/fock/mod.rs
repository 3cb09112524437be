//! The quantum double of Fock type built from a braiding.

mod double;
mod element;
mod lie;
mod lrel;

pub use double::{make_double, Family, Flavor, FockDouble, Gen};
pub use element::{DoubleElement, Key};
pub use lie::{braided_lie, mre_coefficients, BraidedLie, JacobiForm};
