//! Divisors on the projective line.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::point::ClosedPoint;

/// Finite formal sum of closed points; zero multiplicities are never stored.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Divisor {
    terms: BTreeMap<ClosedPoint, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn point(p: ClosedPoint) -> Self {
        Self::from_terms([(p, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ClosedPoint, i64)>) -> Self {
        let mut d = Self::zero();
        for (p, n) in terms {
            d.add_point(p, n);
        }
        d
    }

    pub fn add_point(&mut self, p: ClosedPoint, n: i64) {
        if n == 0 {
            return;
        }
        let e = self.terms.entry(p.clone()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn terms(&self) -> &BTreeMap<ClosedPoint, i64> {
        &self.terms
    }

    pub fn multiplicity(&self, p: &ClosedPoint) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, n)| n * p.degree() as i64).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&n| n > 0)
    }

    pub fn support(&self) -> Vec<ClosedPoint> {
        self.terms.keys().cloned().collect()
    }

    pub fn meets(&self, other: &Divisor) -> bool {
        self.terms.keys().any(|p| other.terms.contains_key(p))
    }

    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, n) in &o.terms {
            d.add_point(p.clone(), *n);
        }
        d
    }

    pub fn scale(&self, k: i64) -> Divisor {
        if k == 0 {
            return Divisor::zero();
        }
        Divisor { terms: self.terms.iter().map(|(p, n)| (p.clone(), n * k)).collect() }
    }

    pub fn neg(&self) -> Divisor {
        self.scale(-1)
    }

    pub fn sub(&self, o: &Divisor) -> Divisor {
        self.add(&o.neg())
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (p, &n)) in self.terms.iter().enumerate() {
            let body = if n.abs() == 1 { format!("{p}") } else { format!("{}*{p}", n.abs()) };
            if i == 0 {
                out = if n < 0 { format!("-{body}") } else { body };
            } else if n < 0 {
                out = format!("{out} - {body}");
            } else {
                out = format!("{out} + {body}");
            }
        }
        out
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::fpoly;
    use crate::algebra::BaseField;

    #[test]
    fn degree_minus_one() {
        let k = BaseField::gf_q(3).unwrap();
        let d = Divisor::from_terms([
            (ClosedPoint::rational(&k.zero()), 2),
            (ClosedPoint::Infinity, -1),
            (ClosedPoint::new(&fpoly(&k, &[1, 0, 1])).unwrap(), -1),
        ]);
        assert_eq!(d.degree(), -1);
        assert_eq!(d.render(), "2*(0) - (t^2 + 1) - (inf)");
    }

    #[test]
    fn zero_multiplicities_dropped() {
        let k = BaseField::gf_q(5).unwrap();
        let p = ClosedPoint::rational(&k.one());
        let d = Divisor::point(p.clone()).sub(&Divisor::point(p));
        assert!(d.is_zero());
    }
}
