//! The user guide in `book/`, compiled here so its examples run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/scalars.md")]
pub mod scalars {}
#[doc = include_str!("../../../book/src/braidings.md")]
pub mod braidings {}
#[doc = include_str!("../../../book/src/algebras.md")]
pub mod algebras {}
#[doc = include_str!("../../../book/src/fock.md")]
pub mod fock {}
#[doc = include_str!("../../../book/src/lie.md")]
pub mod lie {}
#[doc = include_str!("../../../book/src/currents.md")]
pub mod currents {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
