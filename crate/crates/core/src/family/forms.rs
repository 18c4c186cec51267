//! Rational functions on `P1 x P1` in factored form, and divisors cut out by bihomogeneous forms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::bihom::{binary_to_poly, factor_form, BiForm, Y0, Y1};
use crate::algebra::mpoly::MPoly;
use crate::algebra::{BaseField, Fe, Field, Ring};
use crate::curve::{ClosedPoint, Divisor, FactoredFunction};
use crate::symbols::SymbolLetter;
use crate::{Error, Result};

/// Letters for symbols on the surface: the primitive constant or a normalized irreducible form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum FormLetter {
    Const,
    Form(BiForm),
}

impl SymbolLetter for FormLetter {
    fn is_const(&self) -> bool {
        matches!(self, FormLetter::Const)
    }

    fn label(&self, field: &BaseField) -> String {
        match self {
            FormLetter::Const => format!("{}", field.primitive().expect("finite field")),
            FormLetter::Form(f) => f.render(),
        }
    }
}

/// `c * prod F^e` over normalized irreducible forms.
#[derive(Clone, PartialEq, Eq)]
pub struct FormFunction {
    unit: Fe,
    factors: BTreeMap<BiForm, i64>,
}

impl FormFunction {
    pub fn one(field: &BaseField) -> Self {
        FormFunction { unit: field.one(), factors: BTreeMap::new() }
    }

    pub fn from_form(f: &BiForm) -> Result<Self> {
        let fa = factor_form(f)?;
        Ok(FormFunction { unit: fa.unit, factors: fa.factors.into_iter().map(|(g, e)| (g, e as i64)).collect() })
    }

    /// Trusted: keys must be normalized irreducible forms.
    pub(crate) fn from_factors(field: &BaseField, factors: impl IntoIterator<Item = (BiForm, i64)>) -> Self {
        let mut f = Self::one(field);
        for (g, e) in factors {
            f.bump(g, e);
        }
        f
    }

    fn bump(&mut self, g: BiForm, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.factors.entry(g.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&g);
        }
    }

    pub fn unit(&self) -> &Fe {
        &self.unit
    }

    pub fn factors(&self) -> &BTreeMap<BiForm, i64> {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty() && self.unit.is_one()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut f = self.clone();
        f.unit = f.unit.mul(&o.unit);
        for (g, e) in &o.factors {
            f.bump(g.clone(), *e);
        }
        f
    }

    pub fn inv(&self) -> Self {
        FormFunction {
            unit: self.unit.inv().expect("unit"),
            factors: self.factors.iter().map(|(g, e)| (g.clone(), -e)).collect(),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn pow(&self, n: i64) -> Self {
        if n == 0 {
            return Self::one(&self.unit.field());
        }
        FormFunction {
            unit: self.unit.pow_i(n).expect("unit"),
            factors: self.factors.iter().map(|(g, e)| (g.clone(), e * n)).collect(),
        }
    }

    pub fn bidegree(&self) -> (i64, i64) {
        self.factors.iter().fold((0, 0), |(a, b), (g, e)| {
            let (ga, gb) = g.bidegree();
            (a + e * ga as i64, b + e * gb as i64)
        })
    }

    /// Bilinear expansion over letters; needs a finite field.
    pub fn letters(&self) -> Result<Vec<(FormLetter, i64)>> {
        let k = self.unit.dlog().ok_or_else(|| Error::Unsupported("symbols over QQ".into()))?;
        let mut out = Vec::with_capacity(self.factors.len() + 1);
        if k != 0 {
            out.push((FormLetter::Const, k as i64));
        }
        for (g, e) in &self.factors {
            out.push((FormLetter::Form(g.clone()), *e));
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        render_factors(Some(&self.unit), &self.factors)
    }
}

fn render_factors(unit: Option<&Fe>, factors: &BTreeMap<BiForm, i64>) -> String {
    let mut num = Vec::new();
    let mut den = Vec::new();
    for (g, &e) in factors {
        let base = format!("({})", g.render());
        let s = if e.abs() == 1 { base } else { format!("{base}^{}", e.abs()) };
        if e > 0 {
            num.push(s);
        } else {
            den.push(s);
        }
    }
    let mut out = match unit {
        Some(u) if !u.is_one() || num.is_empty() => {
            let c = format!("{u}");
            let c = if c.contains('+') && !(num.is_empty() && den.is_empty()) { format!("({c})") } else { c };
            if num.is_empty() { c } else { format!("{c}*{}", num.join("*")) }
        }
        None if num.is_empty() => "1".into(),
        _ => num.join("*"),
    };
    if !den.is_empty() {
        out = if den.len() == 1 { format!("{out}/{}", den[0]) } else { format!("{out}/({})", den.join("*")) };
    }
    out
}

impl fmt::Display for FormFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for FormFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A divisor on `P1 x B` as a combination of irreducible forms.
#[derive(Clone, PartialEq, Eq)]
pub struct FamilyDivisor {
    field: BaseField,
    components: BTreeMap<BiForm, i64>,
}

impl FamilyDivisor {
    pub fn zero(field: &BaseField) -> Self {
        FamilyDivisor { field: field.clone(), components: BTreeMap::new() }
    }

    /// The divisor of zeros of a form.
    pub fn from_form(f: &BiForm) -> Result<Self> {
        let fa = factor_form(f)?;
        let d = FamilyDivisor {
            field: f.field(),
            components: fa.factors.into_iter().map(|(g, e)| (g, e as i64)).collect(),
        };
        debug_assert_eq!(d.form().map(|g| g.scale(&fa.unit)).as_ref(), Some(f));
        Ok(d)
    }

    /// From irreducible components with multiplicities; each component is checked.
    pub fn from_components(field: &BaseField, comps: impl IntoIterator<Item = (BiForm, i64)>) -> Result<Self> {
        let mut d = Self::zero(field);
        for (g, e) in comps {
            let fa = factor_form(&g)?;
            if fa.factors.len() != 1 || fa.factors.values().next() != Some(&1) {
                return Err(Error::NotIrreducible(g.render()));
            }
            let g = fa.factors.into_keys().next().expect("one factor");
            d.bump(g, e);
        }
        Ok(d)
    }

    fn bump(&mut self, g: BiForm, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.components.entry(g.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.components.remove(&g);
        }
    }

    pub fn field(&self) -> &BaseField {
        &self.field
    }

    pub fn components(&self) -> &BTreeMap<BiForm, i64> {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.components.values().all(|&e| e > 0)
    }

    pub fn bidegree(&self) -> (i64, i64) {
        self.function().bidegree()
    }

    /// Recomputed from the components on every call.
    pub fn has_vertical_component(&self) -> bool {
        self.components.keys().any(|g| g.bidegree().0 == 0)
    }

    pub fn shares_component(&self, o: &Self) -> Option<BiForm> {
        self.components.keys().find(|g| o.components.contains_key(*g)).cloned()
    }

    /// The defining form, for effective divisors.
    pub fn form(&self) -> Option<BiForm> {
        if !self.is_effective() {
            return None;
        }
        let mut acc = BiForm::constant(self.field.one());
        for (g, e) in &self.components {
            acc = acc.mul(&g.pow(*e as u32));
        }
        Some(acc)
    }

    /// The product of the components with their multiplicities, as a function of nonzero bidegree.
    pub fn function(&self) -> FormFunction {
        FormFunction::from_factors(&self.field, self.components.iter().map(|(g, e)| (g.clone(), *e)))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut d = self.clone();
        for (g, e) in &o.components {
            d.bump(g.clone(), *e);
        }
        d
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut d = Self::zero(&self.field);
        for (g, e) in &self.components {
            d.bump(g.clone(), e * k);
        }
        d
    }

    pub fn render(&self) -> String {
        if self.components.is_empty() {
            return "0".into();
        }
        render_factors(None, &self.components)
    }
}

impl fmt::Display for FamilyDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for FamilyDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Every normalized irreducible form of bidegree exactly `(a, b)` over a finite field.
pub fn irreducible_forms(field: &BaseField, a: u32, b: u32) -> Result<Vec<BiForm>> {
    let q = field.size().ok_or_else(|| Error::Unsupported("enumerating forms over QQ".into()))?;
    if a == 0 && b == 0 {
        return Ok(Vec::new());
    }
    let monos: Vec<(u32, u32)> = (0..=a).flat_map(|i| (0..=b).map(move |j| (i, j))).collect();
    let total = q.checked_pow(monos.len() as u32).ok_or_else(|| Error::Unsupported("too many forms".into()))?;
    let one = field.one();
    let mut out = Vec::new();
    for idx in 1..total {
        let mut v = idx;
        let mut terms = Vec::with_capacity(monos.len());
        for &(i, j) in &monos {
            let c = v % q;
            v /= q;
            if c != 0 {
                terms.push((alloc::vec![i as u16, (a - i) as u16, j as u16, (b - j) as u16], field.elem(c)));
            }
        }
        let poly = MPoly::from_terms(4, &one, terms);
        let f = BiForm::new(poly)?;
        if f.bidegree() != (a, b) || !f.is_normalized() {
            continue;
        }
        let fa = factor_form(&f)?;
        if fa.factors.len() == 1 && fa.factors.values().next() == Some(&1) {
            out.push(f);
        }
    }
    out.sort();
    Ok(out)
}

/// `R(u, 1)` for a form in `y` alone.
pub fn y_poly(r: &BiForm) -> crate::algebra::FPoly {
    binary_to_poly(r.poly(), Y0, Y1)
}

/// The divisor on the base `P1` (coordinate `u = y0/y1`) cut out by a form in `y`.
pub fn y_divisor(r: &BiForm) -> Result<Divisor> {
    let (a, n) = r.bidegree();
    if a != 0 {
        return Err(Error::Invalid(format!("{} is not a form in y", r.render())));
    }
    let mut d = FactoredFunction::from_poly(&y_poly(r))?.divisor();
    d.add_point(ClosedPoint::Infinity, n as i64);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(k: &BaseField) -> BiForm {
        BiForm::from_coeffs(k, 1, 1, &[(1, 0, 1), (0, 1, -1)]).unwrap()
    }

    #[test]
    fn family_divisor_roundtrip() {
        let k = BaseField::gf_q(3).unwrap();
        let d = diag(&k);
        let y0 = BiForm::var(Y0, &k.one());
        let f = d.mul(&d).mul(&y0);
        let fd = FamilyDivisor::from_form(&f).unwrap();
        assert_eq!(fd.components().len(), 2);
        assert_eq!(fd.bidegree(), (2, 3));
        assert!(fd.has_vertical_component());
        assert_eq!(fd.form().unwrap(), f);
        assert!(FamilyDivisor::from_components(&k, [(f, 1)]).is_err());
    }

    #[test]
    fn irreducible_counts() {
        let k = BaseField::gf_q(3).unwrap();
        assert_eq!(irreducible_forms(&k, 1, 0).unwrap().len(), 4);
        assert_eq!(irreducible_forms(&k, 0, 1).unwrap().len(), 4);
        assert_eq!(irreducible_forms(&k, 2, 0).unwrap().len(), 3);
        // (3^4 - 1)/2 forms of bidegree (1,1), minus 16 products of lines.
        assert_eq!(irreducible_forms(&k, 1, 1).unwrap().len(), 24);
        assert_eq!(irreducible_forms(&k, 2, 1).unwrap().len(), 216);
    }

    #[test]
    fn y_divisor_degree() {
        let k = BaseField::gf_q(3).unwrap();
        let r = BiForm::from_coeffs(&k, 0, 3, &[(0, 2, 1), (0, 0, 1)]).unwrap();
        let d = y_divisor(&r).unwrap();
        assert_eq!(d.degree(), 3);
        assert_eq!(d.multiplicity(&ClosedPoint::Infinity), 1);
    }
}
