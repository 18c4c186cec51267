//! Sylvester resultants.

use alloc::vec;
use alloc::vec::Vec;

use super::field::{Field, Ring};
use super::linalg::{det_field, det_ring};
use super::poly::Poly;
use crate::{Error, Result};

/// Sylvester matrix of two coefficient lists given highest degree first.
/// The formal degrees are `f.len() - 1` and `g.len() - 1`; leading zeros are allowed.
pub fn sylvester<R: Ring>(f: &[R], g: &[R], like: &R) -> Vec<Vec<R>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![like.zero_like(); size];
        for (j, c) in f.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![like.zero_like(); size];
        for (j, c) in g.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of binary forms (or of polynomials with formal degrees), coefficients in any ring.
pub fn resultant_desc<R: Ring>(f: &[R], g: &[R], like: &R) -> R {
    if f.len() == 1 && g.len() == 1 {
        return like.one_like();
    }
    det_ring(&sylvester(f, g, like), like)
}

/// `Res_t(f, g)` over a field.
pub fn resultant<K: Field>(f: &Poly<K>, g: &Poly<K>) -> Result<K> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.deg0() == 0 && g.deg0() == 0 {
        return Err(Error::DegenerateResultant);
    }
    let like = f.lead();
    let fd: Vec<K> = f.coeffs().iter().rev().cloned().collect();
    let gd: Vec<K> = g.coeffs().iter().rev().cloned().collect();
    Ok(det_field(&sylvester(&fd, &gd, &like), &like))
}

#[cfg(test)]
mod tests {
    use super::super::field::BaseField;
    use super::super::poly::fpoly;
    use super::*;

    #[test]
    fn t2_plus_1_and_t_plus_1() {
        let k = BaseField::gf_q(3).unwrap();
        let r = resultant(&fpoly(&k, &[1, 0, 1]), &fpoly(&k, &[1, 1])).unwrap();
        assert_eq!(r, k.from_i64(2));
    }

    #[test]
    fn linear_evaluation_law() {
        let k = BaseField::gf_q(7).unwrap();
        let g = fpoly(&k, &[3, 1, 4, 1]);
        for a in k.elements() {
            let r = resultant(&Poly::linear(&a), &g).unwrap();
            assert_eq!(r, g.eval(&a));
        }
    }

    #[test]
    fn degenerate() {
        let k = BaseField::gf_q(3).unwrap();
        assert_eq!(resultant(&fpoly(&k, &[1]), &fpoly(&k, &[2])), Err(Error::DegenerateResultant));
    }
}
