//! Dense univariate polynomials over a [`Ring`].

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::field::{Fe, Field, Ring};

/// Coefficients low to high, never with a zero leading coefficient.
/// `zero` fixes the coefficient context so the zero polynomial still knows its ring.
#[derive(Clone)]
pub struct Poly<K> {
    coeffs: Vec<K>,
    zero: K,
}

impl<K: Ring> PartialEq for Poly<K> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}
impl<K: Ring + Eq> Eq for Poly<K> {}

impl<K: Ring + Ord> PartialOrd for Poly<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top.
impl<K: Ring + Ord> Ord for Poly<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl<K: Ring> Poly<K> {
    pub fn new(mut coeffs: Vec<K>, zero: K) -> Self {
        let zero = zero.zero_like();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, zero }
    }

    pub fn zero(zero: &K) -> Self {
        Poly { coeffs: Vec::new(), zero: zero.zero_like() }
    }

    pub fn constant(c: K) -> Self {
        let zero = c.zero_like();
        Self::new(vec![c], zero)
    }

    pub fn one(like: &K) -> Self {
        Self::constant(like.one_like())
    }

    /// The variable `t`.
    pub fn x(like: &K) -> Self {
        Self::new(vec![like.zero_like(), like.one_like()], like.zero_like())
    }

    /// `t - a`.
    pub fn linear(a: &K) -> Self {
        Self::new(vec![a.neg(), a.one_like()], a.zero_like())
    }

    pub fn monomial(c: K, n: usize) -> Self {
        let zero = c.zero_like();
        let mut v = vec![zero.clone(); n];
        v.push(c);
        Self::new(v, zero)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn zero_coeff(&self) -> &K {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial sent to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> K {
        self.coeffs.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect();
        Self::new(v, self.zero.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect();
        Self::new(v, self.zero.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.neg()).collect(), self.zero.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.zero);
        }
        let mut v = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Self::new(v, self.zero.clone())
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect(), self.zero.clone())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.zero);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &K) -> K {
        self.coeffs.iter().rev().fold(self.zero.clone(), |acc, c| acc.mul(x).add(c))
    }

    /// Evaluation at an element of an extension ring, through a coefficient map.
    pub fn eval_with<T: Ring>(&self, x: &T, embed: impl Fn(&K) -> T) -> T {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&embed(c));
        }
        acc
    }

    /// `self(g(t))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(&self.zero);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&c.int_like(i as i64)))
            .collect();
        Self::new(v, self.zero.clone())
    }

    pub fn map<T: Ring>(&self, zero: &T, f: impl Fn(&K) -> T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(f).collect(), zero.zero_like())
    }

    /// `t^deg * self(1/t)` padded to the given degree.
    pub fn reversed(&self, deg: usize) -> Self {
        let mut v: Vec<K> = (0..=deg).map(|i| self.coeff(i)).collect();
        v.reverse();
        Self::new(v, self.zero.clone())
    }
}

impl<K: Field> Poly<K> {
    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        let inv = d.lead().inv().expect("leading coefficient is a unit");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(&self.zero), self.clone());
        }
        let mut q = vec![self.zero.clone(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i].mul(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = r[idx].sub(&c.mul(dj));
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Self::new(q, self.zero.clone()), Self::new(r, self.zero.clone()))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().expect("leading coefficient is a unit");
        self.scale(&inv)
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lead().is_one()
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g` and `g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let z = &self.zero;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(z), Self::zero(z));
        let (mut t0, mut t1) = (Self::zero(z), Self::one(z));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = core::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = core::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = core::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().inv().expect("unit");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `m`, when coprime.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).xgcd(m);
        (g.degree() == Some(0)).then(|| s.rem(m))
    }

    pub fn mul_mod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn pow_mod(&self, e: &[u64], m: &Self) -> Self {
        // `e` is a little-endian sequence of 64-bit limbs.
        let mut acc = Self::one(&self.zero).rem(m);
        let base = self.rem(m);
        for limb in e.iter().rev() {
            for bit in (0..64).rev() {
                acc = acc.mul_mod(&acc, m);
                if (limb >> bit) & 1 == 1 {
                    acc = acc.mul_mod(&base, m);
                }
            }
        }
        acc
    }

    /// Multiplicity of `p` as a factor, and the cofactor.
    pub fn split_power(&self, p: &Self) -> (u32, Self) {
        let mut n = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(p) {
            if cur.is_zero() {
                break;
            }
            cur = q;
            n += 1;
        }
        (n, cur)
    }
}

impl<K: Ring> Ring for Poly<K> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.zero)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.zero)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        Poly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Poly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Poly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn int_like(&self, n: i64) -> Self {
        Self::constant(self.zero.int_like(n))
    }
}

impl<K: Ring + fmt::Display> Poly<K> {
    /// Human-readable form in the given variable, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = format!("{c}");
            let wrapped = if cs.contains('+') || cs.contains('-') && !cs.starts_with('-') || cs.contains('/') {
                format!("({cs})")
            } else {
                cs
            };
            let mono = match i {
                0 => String::new(),
                1 => var.into(),
                _ => format!("{var}^{i}"),
            };
            let term = if i == 0 {
                wrapped
            } else if c.is_one() {
                mono
            } else if c.neg().is_one() {
                format!("-{mono}")
            } else {
                format!("{wrapped}*{mono}")
            };
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out = format!("{out} - {rest}");
            } else {
                out = format!("{out} + {term}");
            }
        }
        out
    }
}

impl<K: Ring + fmt::Display> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl<K: Ring + fmt::Display> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.render("t"))
    }
}

/// Polynomials over a base field.
pub type FPoly = Poly<Fe>;

/// Build a polynomial from integer coefficients (low to high) in a base field.
pub fn fpoly(field: &super::field::BaseField, coeffs: &[i64]) -> FPoly {
    let zero = field.zero();
    Poly::new(coeffs.iter().map(|&c| field.from_i64(c)).collect(), zero)
}

#[cfg(test)]
mod tests {
    use super::super::field::BaseField;
    use super::*;

    #[test]
    fn divrem_roundtrip() {
        let k = BaseField::gf_q(5).unwrap();
        let a = fpoly(&k, &[1, 2, 3, 4, 1]);
        let b = fpoly(&k, &[2, 0, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg0() < 2);
    }

    #[test]
    fn xgcd_bezout() {
        let k = BaseField::gf_q(7).unwrap();
        let a = fpoly(&k, &[1, 0, 1, 3]);
        let b = fpoly(&k, &[6, 1, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn render_signs() {
        let k = BaseField::gf_q(3).unwrap();
        assert_eq!(fpoly(&k, &[1, 0, 1]).render("t"), "t^2 + 1");
        let q = BaseField::Rational;
        assert_eq!(fpoly(&q, &[-1, 1]).render("t"), "t - 1");
    }

    #[test]
    fn ordering_is_degree_first() {
        let k = BaseField::gf_q(3).unwrap();
        assert!(fpoly(&k, &[2, 1]) < fpoly(&k, &[0, 0, 1]));
    }
}
