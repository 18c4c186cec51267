//! Exact arithmetic: fields, polynomials, factorization, resultants, Smith normal form.

pub mod bihom;
pub mod factor;
pub mod field;
pub mod linalg;
pub mod mpoly;
pub mod poly;
pub mod ratfunc;
pub mod residue;
pub mod resultant;
pub mod snf;

pub use field::{BaseField, Fe, Field, GfCtx, Ring};
pub use poly::{FPoly, Poly};
