//! Exact desk-scale computations around the Deligne pairing.
//!
//! Everything here is exact: finite fields and the rationals, polynomials,
//! resultants and Smith normal forms feed tame symbols and norms on the
//! projective line, Cech data on `P1 x B`, divisor correspondences and a
//! finitely presented calculus of Picard categories.
#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod algebra;
pub mod curve;
pub mod symbols;
pub mod family;
pub mod corr;
pub mod picard;

mod error;

pub use error::{Error, Result};
