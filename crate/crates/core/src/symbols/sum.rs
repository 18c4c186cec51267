//! Formal sums of Steinberg symbols modulo bilinearity.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::BaseField;
use crate::curve::{ClosedPoint, FactoredFunction};
use crate::{Error, Result};

/// A generator of the multiplicative monoid of factored functions: the primitive constant, or `pi_P`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Letter {
    Const,
    Point(ClosedPoint),
}

/// Generators of the unit group used to expand symbols bilinearly.
pub trait SymbolLetter: Clone + Ord + fmt::Debug {
    fn is_const(&self) -> bool;
    fn label(&self, field: &BaseField) -> String;
}

impl SymbolLetter for Letter {
    fn is_const(&self) -> bool {
        matches!(self, Letter::Const)
    }

    fn label(&self, field: &BaseField) -> String {
        match self {
            Letter::Const => format!("{}", field.primitive().expect("finite field")),
            Letter::Point(p) => p.poly().expect("finite").render("t"),
        }
    }
}

impl Letter {
    pub fn function(&self, field: &BaseField) -> FactoredFunction {
        match self {
            Letter::Const => FactoredFunction::constant(field.primitive().expect("finite field")).expect("nonzero"),
            Letter::Point(p) => FactoredFunction::of_point(p, field),
        }
    }
}

/// Canonical form: `{f, g}` expanded bilinearly over letters. Coefficients of pairs involving the
/// constant letter live in `Z/(q-1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolSum<L: SymbolLetter = Letter> {
    field: BaseField,
    terms: BTreeMap<(L, L), i64>,
}

fn letters(f: &FactoredFunction) -> Result<Vec<(Letter, i64)>> {
    let c = f.leading_constant();
    let k = c.dlog().ok_or_else(|| Error::Unsupported("symbols over QQ".into()))?;
    let mut out = Vec::new();
    if k != 0 {
        out.push((Letter::Const, k as i64));
    }
    for (p, e) in f.factors() {
        out.push((Letter::Point(p.clone()), *e));
    }
    Ok(out)
}

impl SymbolSum<Letter> {
    /// `{f, g}`.
    pub fn symbol(f: &FactoredFunction, g: &FactoredFunction) -> Result<Self> {
        let field = f.field();
        if field != g.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::from_expansions(&field, &letters(f)?, &letters(g)?))
    }
}

impl<L: SymbolLetter> SymbolSum<L> {
    pub fn zero(field: &BaseField) -> Self {
        SymbolSum { field: field.clone(), terms: BTreeMap::new() }
    }

    /// `{prod a_i^m_i, prod b_j^n_j} = sum m_i n_j {a_i, b_j}`.
    pub fn from_expansions(field: &BaseField, f: &[(L, i64)], g: &[(L, i64)]) -> Self {
        let mut s = Self::zero(field);
        for (a, m) in f {
            for (b, n) in g {
                s.bump((a.clone(), b.clone()), m * n);
            }
        }
        s
    }

    fn modulus(&self, key: &(L, L)) -> Option<i64> {
        if key.0.is_const() || key.1.is_const() {
            Some(self.field.size().expect("finite") as i64 - 1)
        } else {
            None
        }
    }

    pub(crate) fn bump(&mut self, key: (L, L), n: i64) {
        let m = self.modulus(&key);
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e += n;
        if let Some(m) = m {
            *e = e.rem_euclid(m);
        }
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn field(&self) -> &BaseField {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<(L, L), i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for (k, n) in &o.terms {
            s.bump(k.clone(), *n);
        }
        s
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut s = Self::zero(&self.field);
        for (key, n) in &self.terms {
            s.bump(key.clone(), n * k);
        }
        s
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// `{f, g} -> {g, f}` termwise.
    pub fn swap(&self) -> Self {
        let mut s = Self::zero(&self.field);
        for ((a, b), n) in &self.terms {
            s.bump((b.clone(), a.clone()), *n);
        }
        s
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), n)| {
                let sym = format!("{{{}, {}}}", a.label(&self.field), b.label(&self.field));
                if *n == 1 { sym } else { format!("{n}*{sym}") }
            })
            .collect();
        parts.join(" + ")
    }
}

impl<L: SymbolLetter> fmt::Display for SymbolSum<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<L: SymbolLetter> fmt::Debug for SymbolSum<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A random sum of `n` symbols of random functions of degree at most `max_deg`, with coefficients in `-3..=3`.
pub fn random_symbol_sum<R: rand::Rng + ?Sized>(field: &BaseField, n: usize, max_deg: usize, rng: &mut R) -> SymbolSum {
    let mut s = SymbolSum::zero(field);
    for _ in 0..n {
        let f = crate::curve::function::random_function(field, max_deg, rng);
        let g = crate::curve::function::random_function(field, max_deg, rng);
        let c = rng.gen_range(-3..=3);
        s = s.add(&SymbolSum::symbol(&f, &g).expect("finite field").scale(c));
    }
    s
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::fpoly;

    #[test]
    fn bilinear_expansion() {
        let k = BaseField::gf_q(5).unwrap();
        let t = FactoredFunction::linear(&k.zero());
        let u = FactoredFunction::linear(&k.one());
        let lhs = SymbolSum::symbol(&t.mul(&u), &u).unwrap();
        let rhs = SymbolSum::symbol(&t, &u).unwrap().add(&SymbolSum::symbol(&u, &u).unwrap());
        assert_eq!(lhs, rhs);
        let inv = SymbolSum::symbol(&t.inv(), &u).unwrap();
        assert!(inv.add(&SymbolSum::symbol(&t, &u).unwrap()).is_zero());
    }

    #[test]
    fn constants_are_torsion() {
        let k = BaseField::gf_q(5).unwrap();
        let two = FactoredFunction::constant(k.from_i64(2)).unwrap();
        let f = FactoredFunction::from_poly(&fpoly(&k, &[1, 0, 1, 1])).unwrap();
        let s = SymbolSum::symbol(&two, &f).unwrap();
        assert!(!s.is_zero());
        assert!(s.scale(4).is_zero());
        assert!(SymbolSum::symbol(&FactoredFunction::one(&k), &f).unwrap().is_zero());
    }
}
