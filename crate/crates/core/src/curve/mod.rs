//! The projective line over an exact field, its divisors and functions, plus a small elliptic-curve toolkit.

pub mod divisor;
pub mod elliptic;
pub mod function;
pub mod point;

pub use divisor::Divisor;
pub use elliptic::{ec_reduce, standard_curve, ECPoint, EcDivisor, EcPlace, EllipticCurve, Line};
pub use function::FactoredFunction;
pub use point::ClosedPoint;
