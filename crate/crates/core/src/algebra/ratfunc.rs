//! The rational function field `K(u)` over a base field.

use core::fmt;

use super::field::{Fe, Field, Ring};
use super::poly::FPoly;

/// `num / den` with `den` monic and coprime to `num`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: FPoly,
    den: FPoly,
}

impl RatFunc {
    pub fn new(num: FPoly, den: FPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFunc { den: FPoly::one(&den.lead()), num });
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let lc = den.lead();
        let inv = lc.inv().expect("unit");
        Some(RatFunc { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn from_poly(p: FPoly) -> Self {
        let one = FPoly::one(&p.zero_coeff().one_like());
        RatFunc { num: p, den: one }
    }

    pub fn constant(c: Fe) -> Self {
        Self::from_poly(FPoly::constant(c))
    }

    pub fn num(&self) -> &FPoly {
        &self.num
    }

    pub fn den(&self) -> &FPoly {
        &self.den
    }

    pub fn as_constant(&self) -> Option<Fe> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.deg0() == 0 {
            write!(f, "{}", self.num.render("u"))
        } else {
            write!(f, "({})/({})", self.num.render("u"), self.den.render("u"))
        }
    }
}

impl Ring for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc { num: self.num.zero_like(), den: self.den.one_like() }
    }
    fn one_like(&self) -> Self {
        RatFunc { num: self.den.one_like(), den: self.den.one_like() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return RatFunc::new(self.num.add(&rhs.num), self.den.clone()).expect("nonzero");
        }
        let n = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        RatFunc::new(n, self.den.mul(&rhs.den)).expect("nonzero")
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return self.zero_like();
        }
        RatFunc::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).expect("nonzero")
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn int_like(&self, n: i64) -> Self {
        RatFunc { num: self.den.int_like(n), den: self.den.one_like() }
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::BaseField;
    use super::super::poly::fpoly;
    use super::*;

    #[test]
    fn canonical_form() {
        let k = BaseField::gf_q(5).unwrap();
        let a = RatFunc::new(fpoly(&k, &[-1, 0, 1]), fpoly(&k, &[2, 2])).unwrap();
        assert_eq!(a.den(), &fpoly(&k, &[1]));
        assert_eq!(a.num(), &fpoly(&k, &[-3, 3]));
        assert!(a.mul(&a.inv().unwrap()).is_one());
    }
}
