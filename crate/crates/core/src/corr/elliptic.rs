//! Correspondences on `E x E` spanned by graphs of curve maps and the two fiber classes.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::curve::{ECPoint, EcDivisor, EcPlace, EllipticCurve};
use crate::{Error, Result};

/// Elementary maps `E -> E`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum EcMap {
    /// `[n]`, `n != 0`.
    Mul(i64),
    /// The `q`-power Frobenius.
    Frob,
    Translate(ECPoint),
    Neg,
}

/// A composite `f1 o f2 o ... o fk`, stored as `[f1, ..., fk]`; the empty chain is the identity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct EcMorphism {
    maps: Vec<EcMap>,
}

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

impl EcMorphism {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(maps: Vec<EcMap>) -> Result<Self> {
        if maps.iter().any(|m| matches!(m, EcMap::Mul(0))) {
            return Err(Error::Invalid("[0] is not a finite map".into()));
        }
        Ok(EcMorphism { maps })
    }

    pub fn single(m: EcMap) -> Result<Self> {
        Self::new(alloc::vec![m])
    }

    pub fn maps(&self) -> &[EcMap] {
        &self.maps
    }

    /// `self o o`.
    pub fn then_after(&self, o: &Self) -> Self {
        let mut maps = self.maps.clone();
        maps.extend(o.maps.iter().cloned());
        EcMorphism { maps }
    }

    pub fn apply(&self, e: &EllipticCurve, p: &ECPoint) -> ECPoint {
        self.maps.iter().rev().fold(p.clone(), |acc, m| match m {
            EcMap::Mul(n) => e.mul(*n, &acc),
            EcMap::Frob => e.frobenius(&acc),
            EcMap::Translate(t) => e.add(&acc, t),
            EcMap::Neg => e.neg(&acc),
        })
    }

    pub fn degree(&self, e: &EllipticCurve) -> u64 {
        let q = e.field().size().expect("finite");
        self.maps
            .iter()
            .map(|m| match m {
                EcMap::Mul(n) => n.unsigned_abs().pow(2),
                EcMap::Frob => q,
                _ => 1,
            })
            .product()
    }

    pub fn inseparable_degree(&self, e: &EllipticCurve) -> u64 {
        let q = e.field().size().expect("finite");
        let p = e.field().characteristic();
        let ss = e.is_supersingular();
        self.maps
            .iter()
            .map(|m| match m {
                EcMap::Mul(n) => {
                    let v = valuation(n.unsigned_abs(), p);
                    p.pow(if ss { 2 * v } else { v })
                }
                EcMap::Frob => q,
                _ => 1,
            })
            .product()
    }

    pub fn render(&self) -> String {
        if self.maps.is_empty() {
            return "id".into();
        }
        let parts: Vec<String> = self
            .maps
            .iter()
            .map(|m| match m {
                EcMap::Mul(n) => format!("[{n}]"),
                EcMap::Frob => "Frob".into(),
                EcMap::Translate(t) => format!("tau{t}"),
                EcMap::Neg => "[-1]".into(),
            })
            .collect();
        parts.join(" o ")
    }
}

/// Irreducible curves on `C x D`: graphs `{(phi(y), y)}`, `H(c) = {c} x D` and `V(d) = C x {d}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum EcTerm {
    Graph(EcMorphism),
    H(ECPoint),
    V(ECPoint),
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct EcCorrespondence {
    terms: BTreeMap<EcTerm, i64>,
}

impl EcCorrespondence {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(t: EcTerm) -> Self {
        let mut c = Self::zero();
        c.bump(t, 1);
        c
    }

    pub fn graph(m: EcMorphism) -> Self {
        Self::term(EcTerm::Graph(m))
    }

    fn bump(&mut self, t: EcTerm, n: i64) {
        if n == 0 {
            return;
        }
        let e = self.terms.entry(t.clone()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.terms.remove(&t);
        }
    }

    pub fn terms(&self) -> &BTreeMap<EcTerm, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut c = self.clone();
        for (t, n) in &o.terms {
            c.bump(t.clone(), *n);
        }
        c
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut c = Self::zero();
        for (t, n) in &self.terms {
            c.bump(t.clone(), n * k);
        }
        c
    }

    pub fn is_degenerate(&self) -> bool {
        self.terms.keys().all(|t| !matches!(t, EcTerm::Graph(_)))
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, n)| {
                let body = match t {
                    EcTerm::Graph(m) => format!("G[{}]", m.render()),
                    EcTerm::H(c) => format!("H{c}"),
                    EcTerm::V(d) => format!("V{d}"),
                };
                if *n == 1 {
                    body
                } else {
                    format!("{n}*{body}")
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// `(pi_C)_*(pi_D^* m . alpha)` on divisors supported on rational points.
    pub fn act(&self, e: &EllipticCurve, m: &EcDivisor) -> Result<EcDivisor> {
        let mut pts = Vec::new();
        for (place, n) in m.terms() {
            match place {
                EcPlace::Point(p) => pts.push((p.clone(), *n)),
                EcPlace::Closed { desc, .. } => return Err(Error::UnsupportedPointField(desc.clone())),
            }
        }
        let mut out = EcDivisor::zero();
        for (t, k) in &self.terms {
            match t {
                EcTerm::Graph(phi) => {
                    for (p, n) in &pts {
                        out.add_place(EcPlace::Point(phi.apply(e, p)), k * n);
                    }
                }
                EcTerm::H(c) => out.add_place(EcPlace::Point(c.clone()), k * m.degree()),
                EcTerm::V(d) => {
                    if pts.iter().any(|(p, _)| p == d) {
                        return Err(Error::NonProper(format!("{d}")));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self o h`: `h` runs from `C3` to `C2`, `self` from `C2` to `C1`.
    pub fn compose(&self, e: &EllipticCurve, h: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (g, a) in &self.terms {
            for (t, b) in &h.terms {
                let k = a * b;
                match (g, t) {
                    (EcTerm::Graph(phi), EcTerm::Graph(psi)) => out.bump(EcTerm::Graph(phi.then_after(psi)), k),
                    (EcTerm::Graph(phi), EcTerm::H(c)) => out.bump(EcTerm::H(phi.apply(e, c)), k),
                    (EcTerm::Graph(phi), EcTerm::V(d)) => out.bump(EcTerm::V(d.clone()), k * phi.degree(e) as i64),
                    (EcTerm::H(c), EcTerm::Graph(_)) | (EcTerm::H(c), EcTerm::H(_)) => out.bump(EcTerm::H(c.clone()), k),
                    (EcTerm::H(_), EcTerm::V(_)) | (EcTerm::V(_), EcTerm::H(_)) => {}
                    (EcTerm::V(_), EcTerm::V(d)) => out.bump(EcTerm::V(d.clone()), k),
                    (EcTerm::V(d), EcTerm::Graph(psi)) => {
                        let pre: Vec<ECPoint> = e.points().into_iter().filter(|z| &psi.apply(e, z) == d).collect();
                        let insep = psi.inseparable_degree(e);
                        if pre.len() as u64 * insep != psi.degree(e) {
                            return Err(Error::Unsupported(format!(
                                "preimage of {d} under {} is not rational",
                                psi.render()
                            )));
                        }
                        for z in pre {
                            out.bump(EcTerm::V(z), k * insep as i64);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `T(alpha)` on `Pic0(E) = E(F_q)`: `P -> sum(alpha^*((P+R) - (R)))` with `R` chosen so the action is proper.
    pub fn induced_map(&self, e: &EllipticCurve, p: &ECPoint) -> Result<ECPoint> {
        let avoid: Vec<&ECPoint> = self
            .terms
            .keys()
            .filter_map(|t| match t {
                EcTerm::V(d) => Some(d),
                _ => None,
            })
            .collect();
        for r in e.points() {
            let pr = e.add(p, &r);
            if avoid.iter().any(|d| **d == r || **d == pr) {
                continue;
            }
            let m = EcDivisor::from_points([(pr, 1), (r, -1)]);
            return e.reduce(&self.act(e, &m)?);
        }
        Err(Error::SearchFailed("no representative avoids the vertical fibers".into()))
    }

    /// The full table of `T(alpha)` on `E(F_q)`, in the order of `E::points`.
    pub fn induced_table(&self, e: &EllipticCurve) -> Result<Vec<(ECPoint, ECPoint)>> {
        e.points().into_iter().map(|p| Ok((p.clone(), self.induced_map(e, &p)?))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::elliptic::standard_curve;

    #[test]
    fn graph_functoriality() {
        let e = standard_curve();
        let two = EcMorphism::single(EcMap::Mul(2)).unwrap();
        let frob = EcMorphism::single(EcMap::Frob).unwrap();
        let g = EcCorrespondence::graph(two.clone());
        let h = EcCorrespondence::graph(frob.clone());
        let gh = g.compose(&e, &h).unwrap();
        for p in e.points() {
            let lhs = gh.induced_map(&e, &p).unwrap();
            let rhs = g.induced_map(&e, &h.induced_map(&e, &p).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(lhs, e.mul(2, &p));
        }
        assert_eq!(two.then_after(&frob).degree(&e), 20);
    }

    #[test]
    fn translations_act_trivially() {
        let e = standard_curve();
        let t = e.points()[3].clone();
        let g = EcCorrespondence::graph(EcMorphism::single(EcMap::Translate(t)).unwrap());
        for p in e.points() {
            assert_eq!(g.induced_map(&e, &p).unwrap(), p);
        }
    }

    #[test]
    fn degenerate_kill_degree_zero() {
        let e = standard_curve();
        let pts = e.points();
        let a = EcCorrespondence::term(EcTerm::H(pts[1].clone())).add(&EcCorrespondence::term(EcTerm::V(pts[2].clone())));
        for p in &pts {
            assert_eq!(a.induced_map(&e, p).unwrap(), ECPoint::Identity);
        }
        let m = EcDivisor::from_points([(pts[2].clone(), 1), (pts[0].clone(), -1)]);
        assert!(matches!(a.act(&e, &m), Err(Error::NonProper(_))));
    }

    #[test]
    fn vertical_pullback_through_graph() {
        let e = standard_curve();
        let neg = EcMorphism::single(EcMap::Neg).unwrap();
        let d = e.points()[1].clone();
        let v = EcCorrespondence::term(EcTerm::V(d.clone()));
        let c = v.compose(&e, &EcCorrespondence::graph(neg)).unwrap();
        assert_eq!(c, EcCorrespondence::term(EcTerm::V(e.neg(&d))));
        let frob = EcCorrespondence::graph(EcMorphism::single(EcMap::Frob).unwrap());
        assert_eq!(v.compose(&e, &frob).unwrap(), v.scale(5));
    }
}
