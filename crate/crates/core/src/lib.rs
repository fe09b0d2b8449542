//! Exact computations around Galois-Gauss sums and relative algebraic K-groups of
//! small odd-order groups.
//!
//! The crate is `no_std` (with `alloc`) unless the default `std` feature is on.

#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::needless_range_loop, clippy::manual_is_multiple_of)]

extern crate alloc;

pub mod arith;
pub mod classgroups;
pub mod cyclonum;
pub mod error;
pub mod gaussjacobi;
pub mod groups;
pub mod relk;
pub mod weakram;

pub use cyclonum::CycNum;
pub use error::{Error, Result};
