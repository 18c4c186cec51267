//! Rational functions on the projective line in factored form.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::divisor::Divisor;
use super::point::ClosedPoint;
use crate::algebra::factor::factor;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::residue::Residue;
use crate::algebra::{BaseField, FPoly, Fe, Field, Ring};
use crate::{Error, Result};

/// `c * prod pi^e` over monic irreducibles `pi`; the exponent at infinity is implied.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FactoredFunction {
    constant: Fe,
    factors: BTreeMap<ClosedPoint, i64>,
}

impl FactoredFunction {
    pub fn constant(c: Fe) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(FactoredFunction { constant: c, factors: BTreeMap::new() })
    }

    pub fn one(field: &BaseField) -> Self {
        FactoredFunction { constant: field.one(), factors: BTreeMap::new() }
    }

    /// `t - a`.
    pub fn linear(a: &Fe) -> Self {
        let mut f = Self::one(&a.field());
        f.factors.insert(ClosedPoint::rational(a), 1);
        f
    }

    /// The uniformizer-like function attached to a finite point, `pi_P`; infinity maps to 1.
    pub fn of_point(p: &ClosedPoint, field: &BaseField) -> Self {
        let mut f = Self::one(field);
        if !p.is_infinity() {
            f.factors.insert(p.clone(), 1);
        }
        f
    }

    /// From raw parts; every key must be a finite point.
    pub fn from_parts(constant: Fe, factors: impl IntoIterator<Item = (ClosedPoint, i64)>) -> Result<Self> {
        let mut f = Self::constant(constant)?;
        for (p, e) in factors {
            if p.is_infinity() {
                return Err(Error::Invalid("infinity is not a factor".into()));
            }
            f.bump(p, e);
        }
        Ok(f)
    }

    pub fn from_poly(p: &FPoly) -> Result<Self> {
        let fa = factor(p)?;
        let mut f = Self::constant(fa.unit)?;
        for (pi, e) in fa.factors {
            f.bump(ClosedPoint::from_irreducible(pi), e as i64);
        }
        Ok(f)
    }

    pub fn from_ratio(num: &FPoly, den: &FPoly) -> Result<Self> {
        Ok(Self::from_poly(num)?.div(&Self::from_poly(den)?))
    }

    pub fn from_ratfunc(r: &RatFunc) -> Result<Self> {
        Self::from_ratio(r.num(), r.den())
    }

    fn bump(&mut self, p: ClosedPoint, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.factors.entry(p.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&p);
        }
    }

    pub fn field(&self) -> BaseField {
        self.constant.field()
    }

    pub fn leading_constant(&self) -> &Fe {
        &self.constant
    }

    pub fn factors(&self) -> &BTreeMap<ClosedPoint, i64> {
        &self.factors
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut f = self.clone();
        f.constant = f.constant.mul(&o.constant);
        for (p, e) in &o.factors {
            f.bump(p.clone(), *e);
        }
        f
    }

    pub fn inv(&self) -> Self {
        FactoredFunction {
            constant: self.constant.inv().expect("nonzero constant"),
            factors: self.factors.iter().map(|(p, e)| (p.clone(), -e)).collect(),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn pow(&self, n: i64) -> Self {
        if n == 0 {
            return Self::one(&self.field());
        }
        FactoredFunction {
            constant: self.constant.pow_i(n).expect("nonzero constant"),
            factors: self.factors.iter().map(|(p, e)| (p.clone(), e * n)).collect(),
        }
    }

    pub fn scale(&self, c: &Fe) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut f = self.clone();
        f.constant = f.constant.mul(c);
        Ok(f)
    }

    /// `v_inf(p/q) = deg q - deg p`.
    pub fn valuation(&self, p: &ClosedPoint) -> i64 {
        match p {
            ClosedPoint::Infinity => -self.factors.iter().map(|(q, e)| e * q.degree() as i64).sum::<i64>(),
            _ => self.factors.get(p).copied().unwrap_or(0),
        }
    }

    pub fn divisor(&self) -> Divisor {
        let mut d = Divisor::from_terms(self.factors.iter().map(|(p, e)| (p.clone(), *e)));
        d.add_point(ClosedPoint::Infinity, self.valuation(&ClosedPoint::Infinity));
        d
    }

    /// Value in `k(P)`; requires `v_P(f) = 0`. At infinity this is the ratio of leading coefficients.
    pub fn evaluate_at(&self, p: &ClosedPoint) -> Result<Residue<Fe>> {
        if self.valuation(p) != 0 {
            return Err(Error::PoleOrZero(format!("{p}")));
        }
        let field = self.field();
        let modulus = p.residue_modulus(&field);
        let mut acc = Residue::from_scalar(self.constant.clone(), &modulus);
        if p.is_infinity() {
            return Ok(acc);
        }
        for (q, e) in &self.factors {
            let v = Residue::new(q.poly().expect("finite"), &modulus);
            let v = v.pow_i(*e).expect("distinct irreducibles are coprime");
            acc = acc.mul(&v);
        }
        Ok(acc)
    }

    pub fn numerator(&self) -> FPoly {
        let mut acc = FPoly::constant(self.constant.clone());
        for (p, e) in &self.factors {
            if *e > 0 {
                acc = acc.mul(&p.poly().expect("finite").pow(*e as u64));
            }
        }
        acc
    }

    pub fn denominator(&self) -> FPoly {
        let mut acc = FPoly::one(&self.constant);
        for (p, e) in &self.factors {
            if *e < 0 {
                acc = acc.mul(&p.poly().expect("finite").pow(e.unsigned_abs()));
            }
        }
        acc
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::new(self.numerator(), self.denominator()).expect("nonzero denominator")
    }

    /// Value at a base-field point `t = a` (finite, no pole or zero).
    pub fn eval_scalar(&self, a: &Fe) -> Result<Fe> {
        let r = self.evaluate_at(&ClosedPoint::rational(a))?;
        Ok(r.as_scalar().expect("rational point"))
    }

    pub fn render(&self) -> String {
        let mut num: Vec<String> = Vec::new();
        let mut den: Vec<String> = Vec::new();
        for (p, &e) in &self.factors {
            let base = format!("({})", p.poly().expect("finite").render("t"));
            let s = if e.abs() == 1 { base } else { format!("{base}^{}", e.abs()) };
            if e > 0 {
                num.push(s);
            } else {
                den.push(s);
            }
        }
        let c = format!("{}", self.constant);
        let c = if c.contains('+') && !(num.is_empty() && den.is_empty()) { format!("({c})") } else { c };
        let mut out = if num.is_empty() {
            c
        } else if self.constant.is_one() {
            num.join("*")
        } else {
            let c = if c.contains('/') { format!("({c})") } else { c };
            format!("{c}*{}", num.join("*"))
        };
        if !den.is_empty() {
            out = if den.len() == 1 { format!("{out}/{}", den[0]) } else { format!("{out}/({})", den.join("*")) };
        }
        out
    }
}

impl fmt::Display for FactoredFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for FactoredFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A random nonzero function with numerator and denominator of degree at most `max_deg`.
pub fn random_function<R: rand::Rng + ?Sized>(field: &BaseField, max_deg: usize, rng: &mut R) -> FactoredFunction {
    let poly = |rng: &mut R| loop {
        let d = rng.gen_range(0..=max_deg);
        let coeffs: Vec<Fe> = (0..=d).map(|_| field.random(rng)).collect();
        let p = FPoly::new(coeffs, field.zero());
        if !p.is_zero() {
            return p;
        }
    };
    let n = poly(rng);
    let d = poly(rng);
    FactoredFunction::from_ratio(&n, &d).expect("finite-field factoring always succeeds")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::fpoly;

    #[test]
    fn divisor_examples() {
        let k = BaseField::gf_q(3).unwrap();
        let t = FactoredFunction::linear(&k.zero());
        assert_eq!(
            t.divisor(),
            Divisor::from_terms([(ClosedPoint::rational(&k.zero()), 1), (ClosedPoint::Infinity, -1)])
        );
        let f = FactoredFunction::from_ratio(&fpoly(&k, &[1, 0, 1]), &fpoly(&k, &[0, 1])).unwrap();
        let d = f.divisor();
        assert_eq!(d.degree(), 0);
        assert_eq!(d.terms().len(), 3);
        assert_eq!(d.multiplicity(&ClosedPoint::Infinity), -1);
        assert!(FactoredFunction::constant(k.from_i64(2)).unwrap().divisor().is_zero());
    }

    #[test]
    fn evaluation_examples() {
        let k = BaseField::gf_q(3).unwrap();
        let f = FactoredFunction::linear(&k.one());
        let v = f.evaluate_at(&ClosedPoint::rational(&k.zero())).unwrap();
        assert_eq!(v.as_scalar().unwrap(), k.from_i64(-1));
        let g = FactoredFunction::from_ratio(&fpoly(&k, &[1, 0, 1]), &fpoly(&k, &[0, 0, 1])).unwrap();
        assert!(g.evaluate_at(&ClosedPoint::Infinity).unwrap().is_one());
        assert!(matches!(
            FactoredFunction::linear(&k.zero()).evaluate_at(&ClosedPoint::rational(&k.zero())),
            Err(Error::PoleOrZero(_))
        ));
    }

    #[test]
    fn valuations() {
        let k = BaseField::gf_q(3).unwrap();
        let t2 = FactoredFunction::linear(&k.zero()).pow(2);
        assert_eq!(t2.valuation(&ClosedPoint::rational(&k.zero())), 2);
        assert_eq!(t2.valuation(&ClosedPoint::Infinity), -2);
        let p = ClosedPoint::new(&fpoly(&k, &[1, 0, 1])).unwrap();
        let f = FactoredFunction::of_point(&p, &k).pow(3).div(&FactoredFunction::linear(&k.zero()));
        assert_eq!(f.valuation(&p), 3);
    }
}
