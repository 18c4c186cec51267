//! Quotient rings `K[t]/(m)`, which are the residue fields `k(P)` when `m` is irreducible.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::field::{Field, Ring};
use super::linalg::det_field;
use super::poly::Poly;
use crate::{Error, Result};

#[derive(Clone)]
pub struct Residue<K> {
    value: Poly<K>,
    modulus: Arc<Poly<K>>,
}

impl<K: Field> Residue<K> {
    pub fn new(value: &Poly<K>, modulus: &Arc<Poly<K>>) -> Self {
        Residue { value: value.rem(modulus), modulus: modulus.clone() }
    }

    pub fn from_scalar(c: K, modulus: &Arc<Poly<K>>) -> Self {
        Self::new(&Poly::constant(c), modulus)
    }

    pub fn value(&self) -> &Poly<K> {
        &self.value
    }

    pub fn modulus(&self) -> &Arc<Poly<K>> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg0()
    }

    /// Matrix of multiplication by `self` on the basis `1, t, ..., t^(d-1)`; column `j` is `self * t^j`.
    pub fn mult_matrix(&self) -> Vec<Vec<K>> {
        let d = self.degree();
        let zero = self.modulus.zero_coeff().clone();
        let mut cols = Vec::with_capacity(d);
        let t = Poly::x(&zero.one_like());
        let mut cur = self.value.clone();
        for _ in 0..d {
            cols.push((0..d).map(|i| cur.coeff(i)).collect::<Vec<K>>());
            cur = cur.mul(&t).rem(&self.modulus);
        }
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Field norm down to the coefficient field, as the determinant of multiplication.
    pub fn norm(&self) -> Result<K> {
        if self.value.is_zero() {
            return Err(Error::NormOfZero);
        }
        let one = self.modulus.lead().one_like();
        Ok(det_field(&self.mult_matrix(), &one))
    }

    /// The scalar, if `self` lies in the coefficient field.
    pub fn as_scalar(&self) -> Option<K> {
        self.value.is_constant().then(|| self.value.coeff(0))
    }
}

impl<K: Field> PartialEq for Residue<K> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && *self.modulus == *other.modulus
    }
}

impl<K: Field + fmt::Display> fmt::Debug for Residue<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.value)
    }
}

impl<K: Field + fmt::Display> fmt::Display for Residue<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.is_constant() {
            write!(f, "{}", self.value.coeff(0))
        } else {
            write!(f, "[{}]", self.value)
        }
    }
}

impl<K: Field + fmt::Display> Ring for Residue<K> {
    fn zero_like(&self) -> Self {
        Residue { value: self.value.zero_like(), modulus: self.modulus.clone() }
    }
    fn one_like(&self) -> Self {
        Self::new(&self.value.one_like(), &self.modulus)
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Residue { value: self.value.add(&rhs.value), modulus: self.modulus.clone() }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Residue { value: self.value.sub(&rhs.value), modulus: self.modulus.clone() }
    }
    fn mul(&self, rhs: &Self) -> Self {
        Self::new(&self.value.mul(&rhs.value), &self.modulus)
    }
    fn neg(&self) -> Self {
        Residue { value: self.value.neg(), modulus: self.modulus.clone() }
    }
    fn int_like(&self, n: i64) -> Self {
        Self::new(&self.value.int_like(n), &self.modulus)
    }
}

impl<K: Field + fmt::Display> Field for Residue<K> {
    fn inv(&self) -> Option<Self> {
        self.value.inv_mod(&self.modulus).map(|v| Residue { value: v, modulus: self.modulus.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::BaseField;
    use super::super::poly::fpoly;
    use super::*;

    #[test]
    fn norm_of_one_plus_i() {
        let k = BaseField::gf_q(3).unwrap();
        let m = Arc::new(fpoly(&k, &[1, 0, 1]));
        let a = Residue::new(&fpoly(&k, &[1, 1]), &m);
        assert_eq!(a.norm().unwrap(), k.from_i64(2));
    }

    #[test]
    fn scalar_norm_is_power() {
        let k = BaseField::gf_q(5).unwrap();
        let m = Arc::new(fpoly(&k, &[2, 0, 0, 1]));
        let a = Residue::from_scalar(k.from_i64(3), &m);
        assert_eq!(a.norm().unwrap(), k.from_i64(27));
    }

    #[test]
    fn norm_of_zero() {
        let k = BaseField::gf_q(3).unwrap();
        let m = Arc::new(fpoly(&k, &[1, 0, 1]));
        assert_eq!(Residue::new(&fpoly(&k, &[0]), &m).norm(), Err(Error::NormOfZero));
    }
}
