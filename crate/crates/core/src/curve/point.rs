//! Closed points of the projective line.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

use crate::algebra::factor::is_irreducible;
use crate::algebra::residue::Residue;
use crate::algebra::{BaseField, FPoly, Fe, Ring};
use crate::{Error, Result};

/// A Galois orbit of points: a monic irreducible `pi(t)`, or the point at infinity.
/// Finite points sort before infinity, and by degree among themselves.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClosedPoint {
    Finite(Arc<FPoly>),
    Infinity,
}

impl ClosedPoint {
    /// Checks that `pi` is irreducible, then makes it monic.
    pub fn new(pi: &FPoly) -> Result<Self> {
        if pi.is_zero() {
            return Err(Error::ZeroInput);
        }
        if !is_irreducible(pi) {
            return Err(Error::NotIrreducible(pi.render("t")));
        }
        Ok(ClosedPoint::Finite(Arc::new(pi.monic())))
    }

    /// Trusted constructor for factors produced by the factorizer.
    pub(crate) fn from_irreducible(pi: FPoly) -> Self {
        debug_assert!(pi.is_monic());
        ClosedPoint::Finite(Arc::new(pi))
    }

    /// The rational point `t = a`.
    pub fn rational(a: &Fe) -> Self {
        ClosedPoint::Finite(Arc::new(FPoly::linear(a)))
    }

    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Finite(p) => p.deg0(),
            ClosedPoint::Infinity => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ClosedPoint::Infinity)
    }

    pub fn poly(&self) -> Option<&FPoly> {
        match self {
            ClosedPoint::Finite(p) => Some(p),
            ClosedPoint::Infinity => None,
        }
    }

    /// The coordinate of a rational finite point.
    pub fn rational_value(&self) -> Option<Fe> {
        match self {
            ClosedPoint::Finite(p) if p.deg0() == 1 => Some(p.coeff(0).neg()),
            _ => None,
        }
    }

    /// Modulus presenting `k(P)`; at infinity this is `t`, so `k(inf)` is the base field.
    pub fn residue_modulus(&self, field: &BaseField) -> Arc<FPoly> {
        match self {
            ClosedPoint::Finite(p) => p.clone(),
            ClosedPoint::Infinity => Arc::new(FPoly::x(&field.one())),
        }
    }

    pub fn residue_scalar(&self, c: &Fe) -> Residue<Fe> {
        Residue::from_scalar(c.clone(), &self.residue_modulus(&c.field()))
    }

    pub fn label(&self) -> String {
        match self {
            ClosedPoint::Infinity => "inf".into(),
            ClosedPoint::Finite(p) if p.deg0() == 1 => format!("{}", p.coeff(0).neg()),
            ClosedPoint::Finite(p) => p.render("t"),
        }
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

impl fmt::Debug for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Every closed point of degree at most `max_deg` over a finite field, infinity last.
pub fn closed_points(field: &BaseField, max_deg: usize) -> alloc::vec::Vec<ClosedPoint> {
    let mut out = alloc::vec::Vec::new();
    for d in 1..=max_deg {
        for p in crate::algebra::factor::monic_irreducibles(field, d) {
            out.push(ClosedPoint::from_irreducible(p));
        }
    }
    out.push(ClosedPoint::Infinity);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::fpoly;

    #[test]
    fn labels() {
        let k = BaseField::gf_q(3).unwrap();
        assert_eq!(format!("{}", ClosedPoint::rational(&k.from_i64(0))), "(0)");
        assert_eq!(format!("{}", ClosedPoint::new(&fpoly(&k, &[1, 0, 1])).unwrap()), "(t^2 + 1)");
        assert_eq!(format!("{}", ClosedPoint::Infinity), "(inf)");
    }

    #[test]
    fn rejects_reducible() {
        let k = BaseField::gf_q(3).unwrap();
        assert!(ClosedPoint::new(&fpoly(&k, &[-1, 0, 1])).is_err());
    }

    #[test]
    fn point_count() {
        let k = BaseField::gf_q(3).unwrap();
        // 3 + 3 rational and quadratic points, plus infinity.
        assert_eq!(closed_points(&k, 2).len(), 7);
    }
}
