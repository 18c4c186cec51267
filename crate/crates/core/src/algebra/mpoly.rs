//! Sparse multivariate polynomials over a base field.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::field::{Fe, Field, Ring};

/// Exponent vectors are compared lexicographically; the largest is the leading term.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, Fe>,
    zero: Fe,
}

impl MPoly {
    pub fn zero(nvars: usize, like: &Fe) -> Self {
        MPoly { nvars, terms: BTreeMap::new(), zero: like.zero_like() }
    }

    pub fn constant(nvars: usize, c: Fe) -> Self {
        let mut p = Self::zero(nvars, &c);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize, like: &Fe) -> Self {
        Self::constant(nvars, like.one_like())
    }

    pub fn var(nvars: usize, i: usize, like: &Fe) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, like.one_like())
    }

    pub fn monomial(exp: Vec<u16>, c: Fe) -> Self {
        let mut p = Self::zero(exp.len(), &c);
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(nvars: usize, like: &Fe, terms: impl IntoIterator<Item = (Vec<u16>, Fe)>) -> Self {
        let mut p = Self::zero(nvars, like);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: Vec<u16>, c: Fe) {
        debug_assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u16>, Fe> {
        &self.terms
    }

    pub fn zero_coeff(&self) -> &Fe {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u16]) -> Fe {
        self.terms.get(exp).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn leading(&self) -> Option<(&Vec<u16>, &Fe)> {
        self.terms.iter().next_back()
    }

    /// Total degree in the listed variables, if homogeneous there.
    pub fn homogeneous_degree(&self, vars: &[usize]) -> Option<u32> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d: u32 = vars.iter().map(|&v| e[v] as u32).sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Largest exponent of a single variable.
    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v] as u32).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
            zero: self.zero.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.nvars, &self.zero);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u16> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.mul(c2));
            }
        }
        r
    }

    pub fn scale(&self, c: &Fe) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, &self.zero);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a.mul(c))).collect(),
            zero: self.zero.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars, &self.zero);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division, if `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (de, dc) = d.leading()?;
        let (de, dinv) = (de.clone(), dc.inv()?);
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars, &self.zero);
        while let Some((e, c)) = r.leading() {
            if e.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u16> = e.iter().zip(&de).map(|(a, b)| a - b).collect();
            let qc = c.mul(&dinv);
            let t = Self::monomial(qe, qc);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Substitute a polynomial for each variable.
    pub fn substitute(&self, vals: &[MPoly]) -> MPoly {
        let nv = vals.first().map(|v| v.nvars).unwrap_or(0);
        let mut out = MPoly::zero(nv, &self.zero);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(nv, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&vals[i].pow(k as u32));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Evaluate every variable at a field element.
    pub fn eval(&self, vals: &[Fe]) -> Fe {
        let mut acc = self.zero.clone();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&vals[i].pow_u(k as u64));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Reindex variables: variable `i` of `self` becomes variable `map[i]` of an `nvars`-variable ring.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> MPoly {
        let mut out = MPoly::zero(nvars, &self.zero);
        for (e, c) in &self.terms {
            let mut ne = vec![0u16; nvars];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Coefficients of `self` as a polynomial in the binary form `(v0, v1)` of the given degree,
    /// highest power of `v0` first; the coefficients keep the remaining variables.
    pub fn binary_coeffs(&self, v0: usize, v1: usize, deg: u32) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(self.nvars, &self.zero); deg as usize + 1];
        for (e, c) in &self.terms {
            let i = deg as usize - e[v0] as usize;
            let mut ne = e.clone();
            ne[v0] = 0;
            ne[v1] = 0;
            out[i].add_term(ne, c.clone());
        }
        out
    }

    pub fn render(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { String::from(names[i]) } else { format!("{}^{}", names[i], k) })
                .collect();
            let mono = mono.join("*");
            let cs = format!("{c}");
            let wrapped = if cs.contains('+') || cs.contains('/') || (cs.contains('-') && !cs.starts_with('-')) {
                format!("({cs})")
            } else {
                cs
            };
            let term = if mono.is_empty() {
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

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        f.write_str(&self.render(&refs))
    }
}

impl Ring for MPoly {
    fn zero_like(&self) -> Self {
        MPoly::zero(self.nvars, &self.zero)
    }
    fn one_like(&self) -> Self {
        MPoly::one(self.nvars, &self.zero)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        MPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        MPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        MPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        MPoly::neg(self)
    }
    fn int_like(&self, n: i64) -> Self {
        MPoly::constant(self.nvars, self.zero.int_like(n))
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::BaseField;
    use super::*;

    #[test]
    fn exact_division() {
        let k = BaseField::gf_q(5).unwrap();
        let one = k.one();
        let x = MPoly::var(2, 0, &one);
        let y = MPoly::var(2, 1, &one);
        let a = x.add(&y);
        let b = x.sub(&y.scale(&k.from_i64(2)));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.add(&MPoly::one(2, &one)).div_exact(&a), None);
    }
}
