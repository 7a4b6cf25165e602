//! Exact-arithmetic kernels for tropical varieties of Laurent-polynomial
//! ideals over `Z` and over valued fields, Fox calculus and jump ideals of
//! finitely presented groups, and the resulting upper bounds for BNSR
//! invariants on the character sphere.
//!
//! Everything is computed over arbitrary-precision integers and rationals;
//! there is no floating point anywhere in this crate.

pub mod abelian;
pub mod alexander;
pub mod catalog;
pub mod error;
pub mod geometry;
pub mod laurent;
pub mod matrix;
pub mod tropical;
pub mod valuation;

pub use error::{Error, Result};
