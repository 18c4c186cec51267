//! Tame symbols, Weil reciprocity and the norm of a tame vector.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::sum::SymbolSum;
use crate::algebra::residue::Residue;
use crate::algebra::{BaseField, Fe, Field, Ring};
use crate::curve::{ClosedPoint, FactoredFunction};
use crate::Result;

/// `(-1)^(v(f) v(g)) f^v(g) / g^v(f)` evaluated in `k(P)`.
pub fn tame_symbol(f: &FactoredFunction, g: &FactoredFunction, p: &ClosedPoint) -> Residue<Fe> {
    let vf = f.valuation(p);
    let vg = g.valuation(p);
    let h = f.pow(vg).div(&g.pow(vf));
    let v = h.evaluate_at(p).expect("valuation zero by construction");
    if (vf * vg) % 2 != 0 { v.neg() } else { v }
}

fn support(f: &FactoredFunction, g: &FactoredFunction) -> BTreeSet<ClosedPoint> {
    let mut s: BTreeSet<ClosedPoint> = f.factors().keys().cloned().collect();
    s.extend(g.factors().keys().cloned());
    s.insert(ClosedPoint::Infinity);
    s
}

/// Product over all closed points of the norms of the tame symbols.
pub fn weil_product(f: &FactoredFunction, g: &FactoredFunction) -> Fe {
    let mut acc = f.field().one();
    for p in support(f, g) {
        let n = tame_symbol(f, g, &p).norm().expect("tame symbols are units");
        acc = acc.mul(&n);
    }
    acc
}

/// The per-point contributions to `weil_product`, trivial ones included.
pub fn weil_contributions(f: &FactoredFunction, g: &FactoredFunction) -> Vec<(ClosedPoint, Residue<Fe>, Fe)> {
    support(f, g)
        .into_iter()
        .map(|p| {
            let t = tame_symbol(f, g, &p);
            let n = t.norm().expect("unit");
            (p, t, n)
        })
        .collect()
}

/// A finitely supported family of units `h(P) in k(P)*`; trivial entries are dropped.
#[derive(Clone, PartialEq)]
pub struct TameVector {
    field: BaseField,
    entries: BTreeMap<ClosedPoint, Residue<Fe>>,
}

impl TameVector {
    pub fn empty(field: &BaseField) -> Self {
        TameVector { field: field.clone(), entries: BTreeMap::new() }
    }

    pub fn single(p: ClosedPoint, v: Residue<Fe>) -> Result<Self> {
        let mut t = Self::empty(&v.value().zero_coeff().field());
        t.mul_entry(p, v)?;
        Ok(t)
    }

    fn mul_entry(&mut self, p: ClosedPoint, v: Residue<Fe>) -> Result<()> {
        if v.is_zero() {
            return Err(crate::Error::ZeroInput);
        }
        let cur = match self.entries.remove(&p) {
            Some(c) => c.mul(&v),
            None => v,
        };
        if !cur.is_one() {
            self.entries.insert(p, cur);
        }
        Ok(())
    }

    pub fn entries(&self) -> &BTreeMap<ClosedPoint, Residue<Fe>> {
        &self.entries
    }

    pub fn get(&self, p: &ClosedPoint) -> Option<&Residue<Fe>> {
        self.entries.get(p)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut t = self.clone();
        for (p, v) in &o.entries {
            t.mul_entry(p.clone(), v.clone()).expect("units");
        }
        t
    }

    pub fn pow(&self, n: i64) -> Self {
        let mut t = Self::empty(&self.field);
        for (p, v) in &self.entries {
            t.mul_entry(p.clone(), v.pow_i(n).expect("unit")).expect("unit");
        }
        t
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(|(p, v)| format!("{p} -> {}", render_residue(v))).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Residue-field elements print as polynomials in `t` reduced modulo `pi`.
pub fn render_residue(v: &Residue<Fe>) -> String {
    match v.as_scalar() {
        Some(c) => format!("{c}"),
        None => v.value().render("t"),
    }
}

impl fmt::Debug for TameVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `prod_P N_{k(P)/k}(h(P))`.
pub fn gersten_norm(h: &TameVector) -> Fe {
    let mut acc = h.field.one();
    for v in h.entries.values() {
        acc = acc.mul(&v.norm().expect("units"));
    }
    acc
}

/// The tame map, applied symbol by symbol to the canonical expansion.
pub fn tame_vector_of(s: &SymbolSum) -> TameVector {
    let field = s.field();
    let mut out = TameVector::empty(field);
    for ((a, b), n) in s.terms() {
        let f = a.function(field);
        let g = b.function(field);
        for p in support(&f, &g) {
            let v = tame_symbol(&f, &g, &p).pow_i(*n).expect("unit");
            out.mul_entry(p, v).expect("unit");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::fpoly;

    fn k3() -> BaseField {
        BaseField::gf_q(3).unwrap()
    }

    #[test]
    fn tame_examples() {
        let k = k3();
        let t = FactoredFunction::linear(&k.zero());
        let t1 = FactoredFunction::linear(&k.one());
        let at0 = tame_symbol(&t, &t1, &ClosedPoint::rational(&k.zero()));
        assert_eq!(at0.as_scalar().unwrap(), k.from_i64(2));
        let at_inf = tame_symbol(&t, &t1, &ClosedPoint::Infinity);
        assert_eq!(at_inf.as_scalar().unwrap(), k.from_i64(2));
        let at1 = tame_symbol(&t, &t1, &ClosedPoint::rational(&k.one()));
        assert!(at1.is_one());
        let p = ClosedPoint::new(&fpoly(&k, &[1, 0, 1])).unwrap();
        assert!(tame_symbol(&t, &t1, &p).is_one());
    }

    #[test]
    fn weil_example() {
        let k = k3();
        let t = FactoredFunction::linear(&k.zero());
        let t1 = FactoredFunction::linear(&k.one());
        assert!(weil_product(&t, &t1).is_one());
        let c = FactoredFunction::constant(k.from_i64(2)).unwrap();
        assert!(weil_product(&c, &c).is_one());
    }

    #[test]
    fn tame_vector_example() {
        let k = k3();
        let t = FactoredFunction::linear(&k.zero());
        let t1 = FactoredFunction::linear(&k.one());
        let v = tame_vector_of(&SymbolSum::symbol(&t, &t1).unwrap());
        assert_eq!(v.entries().len(), 2);
        assert_eq!(v.get(&ClosedPoint::rational(&k.zero())).unwrap().as_scalar().unwrap(), k.from_i64(2));
        assert_eq!(v.get(&ClosedPoint::Infinity).unwrap().as_scalar().unwrap(), k.from_i64(2));
        assert!(gersten_norm(&v).is_one());
        assert!(tame_vector_of(&SymbolSum::zero(&k)).is_empty());
    }

    #[test]
    fn single_point_norm() {
        let k = BaseField::gf_q(5).unwrap();
        let p = ClosedPoint::rational(&k.from_i64(3));
        let h = TameVector::single(p.clone(), p.residue_scalar(&k.from_i64(2))).unwrap();
        assert_eq!(gersten_norm(&h), k.from_i64(2));
    }
}
