//! Short Weierstrass curves over finite fields, rational points and their divisors.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::factor::factor;
use crate::algebra::{BaseField, FPoly, Fe, Field, Ring};
use crate::{Error, Result};

/// `y^2 = x^3 + a x + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticCurve {
    a: Fe,
    b: Fe,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ECPoint {
    Identity,
    Affine(Fe, Fe),
}

impl fmt::Display for ECPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ECPoint::Identity => f.write_str("O"),
            ECPoint::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

impl fmt::Debug for ECPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl EllipticCurve {
    pub fn new(a: Fe, b: Fe) -> Result<Self> {
        let field = a.field();
        if !field.is_finite() {
            return Err(Error::Unsupported("elliptic curves over QQ".into()));
        }
        if field.characteristic() <= 3 {
            return Err(Error::Unsupported("short Weierstrass form in characteristic 2 or 3".into()));
        }
        let disc = field.from_i64(4).mul(&a.pow_u(3)).add(&field.from_i64(27).mul(&b.pow_u(2)));
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(EllipticCurve { a, b })
    }

    pub fn field(&self) -> BaseField {
        self.a.field()
    }

    pub fn a(&self) -> &Fe {
        &self.a
    }

    pub fn b(&self) -> &Fe {
        &self.b
    }

    fn rhs(&self, x: &Fe) -> Fe {
        x.pow_u(3).add(&self.a.mul(x)).add(&self.b)
    }

    pub fn contains(&self, p: &ECPoint) -> bool {
        match p {
            ECPoint::Identity => true,
            ECPoint::Affine(x, y) => y.mul(y) == self.rhs(x),
        }
    }

    pub fn point(&self, x: Fe, y: Fe) -> Result<ECPoint> {
        let p = ECPoint::Affine(x, y);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::NotOnCurve)
        }
    }

    /// All rational points, identity first.
    pub fn points(&self) -> Vec<ECPoint> {
        let field = self.field();
        let els = field.elements();
        let mut out = vec![ECPoint::Identity];
        for x in &els {
            let r = self.rhs(x);
            for y in &els {
                if y.mul(y) == r {
                    out.push(ECPoint::Affine(x.clone(), y.clone()));
                }
            }
        }
        out
    }

    pub fn neg(&self, p: &ECPoint) -> ECPoint {
        match p {
            ECPoint::Identity => ECPoint::Identity,
            ECPoint::Affine(x, y) => ECPoint::Affine(x.clone(), y.neg()),
        }
    }

    /// Chord-tangent addition.
    pub fn add(&self, p: &ECPoint, q: &ECPoint) -> ECPoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (ECPoint::Identity, _) => return q.clone(),
            (_, ECPoint::Identity) => return p.clone(),
            (ECPoint::Affine(x1, y1), ECPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if y1.add(y2).is_zero() {
                return ECPoint::Identity;
            }
            let num = x1.mul(x1).mul(&x1.int_like(3)).add(&self.a);
            num.div(&y1.mul(&y1.int_like(2))).expect("y != 0")
        } else {
            y2.sub(y1).div(&x2.sub(x1)).expect("x1 != x2")
        };
        let x3 = lambda.mul(&lambda).sub(x1).sub(x2);
        let y3 = lambda.mul(&x1.sub(&x3)).sub(y1);
        ECPoint::Affine(x3, y3)
    }

    pub fn sub(&self, p: &ECPoint, q: &ECPoint) -> ECPoint {
        self.add(p, &self.neg(q))
    }

    pub fn mul(&self, n: i64, p: &ECPoint) -> ECPoint {
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = ECPoint::Identity;
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &b);
            }
            b = self.add(&b, &b);
            k >>= 1;
        }
        acc
    }

    pub fn frobenius(&self, p: &ECPoint) -> ECPoint {
        let q = self.field().size().expect("finite");
        match p {
            ECPoint::Identity => ECPoint::Identity,
            ECPoint::Affine(x, y) => ECPoint::Affine(x.pow_u(q), y.pow_u(q)),
        }
    }

    /// Supersingular iff `#E(F_q) = 1 mod p`.
    pub fn is_supersingular(&self) -> bool {
        let p = self.field().characteristic();
        self.points().len() as u64 % p == 1 % p
    }

    /// Divisor of a line, found by factoring the restriction of the curve equation.
    pub fn line_divisor(&self, line: &Line) -> Result<EcDivisor> {
        let field = self.field();
        let zero = field.zero();
        let mut d = EcDivisor::zero();
        match line {
            Line::Vertical(c) => {
                // y^2 - rhs(c)
                let f = FPoly::new(vec![self.rhs(c).neg(), zero.clone(), field.one()], zero.clone());
                let fa = factor(&f)?;
                for (g, e) in &fa.factors {
                    if g.deg0() == 1 {
                        let y = g.coeff(0).neg();
                        d.add_place(EcPlace::Point(ECPoint::Affine(c.clone(), y)), *e as i64);
                    } else {
                        d.add_place(EcPlace::closed(format!("x = {c}, {}", g.render("y")), g.deg0()), *e as i64);
                    }
                }
                d.add_place(EcPlace::Point(ECPoint::Identity), -2);
            }
            Line::Slope(l, n) => {
                // x^3 + a x + b - (l x + n)^2
                let lin = FPoly::new(vec![n.clone(), l.clone()], zero.clone());
                let cubic = FPoly::new(vec![self.b.clone(), self.a.clone(), zero.clone(), field.one()], zero.clone())
                    .sub(&lin.mul(&lin));
                let fa = factor(&cubic)?;
                for (g, e) in &fa.factors {
                    if g.deg0() == 1 {
                        let x = g.coeff(0).neg();
                        let y = l.mul(&x).add(n);
                        d.add_place(EcPlace::Point(ECPoint::Affine(x, y)), *e as i64);
                    } else {
                        let desc = format!("{}, y = {}", g.render("x"), lin.render("x"));
                        d.add_place(EcPlace::closed(desc, g.deg0()), *e as i64);
                    }
                }
                d.add_place(EcPlace::Point(ECPoint::Identity), -3);
            }
        }
        Ok(d)
    }

    /// The line through two rational points (tangent when equal).
    pub fn line_through(&self, p: &ECPoint, q: &ECPoint) -> Option<Line> {
        match (p, q) {
            (ECPoint::Affine(x1, y1), ECPoint::Affine(x2, y2)) => {
                if x1 == x2 {
                    if y1 == y2 && !y1.is_zero() {
                        let l = x1.mul(x1).mul(&x1.int_like(3)).add(&self.a).div(&y1.mul(&y1.int_like(2)))?;
                        Some(Line::Slope(l.clone(), y1.sub(&l.mul(x1))))
                    } else {
                        Some(Line::Vertical(x1.clone()))
                    }
                } else {
                    let l = y2.sub(y1).div(&x2.sub(x1))?;
                    Some(Line::Slope(l.clone(), y1.sub(&l.mul(x1))))
                }
            }
            (ECPoint::Affine(x, _), ECPoint::Identity) | (ECPoint::Identity, ECPoint::Affine(x, _)) => {
                Some(Line::Vertical(x.clone()))
            }
            _ => None,
        }
    }

    /// Sum of a degree-zero divisor supported on rational points.
    pub fn reduce(&self, d: &EcDivisor) -> Result<ECPoint> {
        if d.degree() != 0 {
            return Err(Error::Invalid(format!("divisor of degree {} (need 0)", d.degree())));
        }
        let mut acc = ECPoint::Identity;
        for (place, n) in d.terms() {
            match place {
                EcPlace::Point(p) => {
                    if !self.contains(p) {
                        return Err(Error::NotOnCurve);
                    }
                    acc = self.add(&acc, &self.mul(*n, p));
                }
                EcPlace::Closed { desc, .. } => return Err(Error::UnsupportedPointField(desc.clone())),
            }
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Line {
    Vertical(Fe),
    /// `y = l x + n`.
    Slope(Fe, Fe),
}

/// A place of the curve: a rational point, or a closed point of higher degree kept only by description.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EcPlace {
    Point(ECPoint),
    Closed { desc: String, degree: usize },
}

impl EcPlace {
    fn closed(desc: String, degree: usize) -> Self {
        EcPlace::Closed { desc, degree }
    }

    pub fn degree(&self) -> usize {
        match self {
            EcPlace::Point(_) => 1,
            EcPlace::Closed { degree, .. } => *degree,
        }
    }
}

#[derive(Clone, Default, PartialEq, Eq)]
pub struct EcDivisor {
    terms: BTreeMap<EcPlace, i64>,
}

impl EcDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn point(p: ECPoint) -> Self {
        let mut d = Self::zero();
        d.add_place(EcPlace::Point(p), 1);
        d
    }

    pub fn from_points(pts: impl IntoIterator<Item = (ECPoint, i64)>) -> Self {
        let mut d = Self::zero();
        for (p, n) in pts {
            d.add_place(EcPlace::Point(p), n);
        }
        d
    }

    pub fn add_place(&mut self, p: EcPlace, n: i64) {
        if n == 0 {
            return;
        }
        let e = self.terms.entry(p.clone()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn terms(&self) -> &BTreeMap<EcPlace, i64> {
        &self.terms
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, n)| n * p.degree() as i64).sum()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut d = self.clone();
        for (p, n) in &o.terms {
            d.add_place(p.clone(), *n);
        }
        d
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut d = Self::zero();
        for (p, n) in &self.terms {
            d.add_place(p.clone(), n * k);
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, n)| {
                let body = match p {
                    EcPlace::Point(pt) => format!("[{pt}]"),
                    EcPlace::Closed { desc, .. } => format!("[{desc}]"),
                };
                format!("{n}*{body}")
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for EcDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `y^2 = x^3 + x + 1` over `GF(5)`.
/// Abel-Jacobi on degree-zero divisors: `sum n_i P_i` in the group law.
pub fn ec_reduce(e: &EllipticCurve, d: &EcDivisor) -> Result<ECPoint> {
    e.reduce(d)
}

pub fn standard_curve() -> EllipticCurve {
    let k = BaseField::gf_q(5).expect("prime");
    EllipticCurve::new(k.one(), k.one()).expect("nonsingular")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_points() {
        let e = standard_curve();
        assert_eq!(e.points().len(), 9);
        assert!(!e.is_supersingular());
    }

    #[test]
    fn group_axioms() {
        let e = standard_curve();
        let pts = e.points();
        for p in &pts {
            assert_eq!(e.add(p, &e.neg(p)), ECPoint::Identity);
            for q in &pts {
                assert_eq!(e.add(p, q), e.add(q, p));
                assert!(e.contains(&e.add(p, q)));
                for r in &pts {
                    assert_eq!(e.add(&e.add(p, q), r), e.add(p, &e.add(q, r)));
                }
            }
        }
    }

    #[test]
    fn line_divisors_are_principal() {
        let e = standard_curve();
        let pts = e.points();
        for p in &pts {
            for q in &pts {
                if let Some(l) = e.line_through(p, q) {
                    let d = e.line_divisor(&l).unwrap();
                    assert_eq!(d.degree(), 0);
                    assert_eq!(e.reduce(&d).unwrap(), ECPoint::Identity);
                }
            }
        }
    }

    #[test]
    fn unsupported_field() {
        let e = standard_curve();
        let k = e.field();
        // Some line meets the curve in a non-rational closed point.
        let mut saw = false;
        for l in k.elements() {
            for n in k.elements() {
                let d = e.line_divisor(&Line::Slope(l.clone(), n.clone())).unwrap();
                if let Err(Error::UnsupportedPointField(_)) = e.reduce(&d) {
                    saw = true;
                }
            }
        }
        assert!(saw);
    }

    #[test]
    fn rejects_singular() {
        let k = BaseField::gf_q(5).unwrap();
        assert_eq!(EllipticCurve::new(k.zero(), k.zero()), Err(Error::SingularCurve));
    }
}
