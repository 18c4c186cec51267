//! Families `P1 x B -> B`: Cech cocycles of line bundles, symbol cocycles, and the two routes
//! from a pair of relative divisors to a line bundle on the base.

pub mod cech;
pub mod forms;
pub mod theta;

pub use cech::{cocycle_of_divisor, cup_cocycle, lambda_boundary, FamilyBase, LineBundleCocycle, SymbolCocycle, XCover};
pub use forms::{irreducible_forms, FamilyDivisor, FormFunction, FormLetter};
pub use theta::{compare_routes, deligne_norm_family, norm_pushforward, theta_cocycle, BaseCover, PicClass, RouteComparison};
