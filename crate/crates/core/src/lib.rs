//! Exact centralisers of nilpotent elements in the classical Lie algebras.
//!
//! The crate builds the centraliser `z(e)` of a nilpotent matrix `e` in
//! `gl_n`, `sp_2n` or `so_n` from the partition of its Jordan blocks,
//! computes indices of Lie algebras through the generic rank of the
//! Kirillov form, and checks the distinguished covectors and generic
//! stabilisers attached to these centralisers. All arithmetic is over the
//! rationals; nothing is ever rounded.
//!
//! The crate is `no_std` and only needs `alloc`. Report generation, file
//! formats and the command line live in the `nilcent` crate.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]
// index loops read best in the elimination code
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod centralizer;
pub mod covectors;
mod error;
pub mod exactlin;
pub mod genstab;
pub mod indexcalc;
pub mod jordan;
pub mod lie;

pub use error::Error;

/// Shorthand for results carrying this crate's [`Error`].
pub type Result<T> = core::result::Result<T, Error>;
