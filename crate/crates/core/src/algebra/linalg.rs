//! Determinants over fields (elimination) and over rings (Berkowitz).

use alloc::vec;
use alloc::vec::Vec;

use super::field::{Field, Ring};

/// Determinant by Gaussian elimination; `like` supplies the field context for `0x0`.
pub fn det_field<K: Field>(m: &[Vec<K>], like: &K) -> K {
    let n = m.len();
    let mut a: Vec<Vec<K>> = m.to_vec();
    let mut det = like.one_like();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return like.zero_like();
        };
        if piv != col {
            a.swap(piv, col);
            det = det.neg();
        }
        let pv = a[col][col].clone();
        det = det.mul(&pv);
        let inv = pv.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].mul(&inv);
            for c in col..n {
                let v = a[col][c].mul(&f);
                a[r][c] = a[r][c].sub(&v);
            }
        }
    }
    det
}

/// Division-free determinant (Berkowitz).
pub fn det_ring<R: Ring>(m: &[Vec<R>], like: &R) -> R {
    let n = m.len();
    if n == 0 {
        return like.one_like();
    }
    // Characteristic polynomial coefficients, built over leading principal submatrices.
    let mut v: Vec<R> = vec![like.one_like(), m[0][0].neg()];
    for r in 1..n {
        // Blocks of the (r+1)x(r+1) principal submatrix: [[A, S], [R, a]].
        let a = &m[r][r];
        let row: Vec<R> = (0..r).map(|j| m[r][j].clone()).collect();
        let col: Vec<R> = (0..r).map(|i| m[i][r].clone()).collect();
        // Toeplitz column: 1, -a, -R S, -R A S, -R A^2 S, ...
        let mut t = vec![like.one_like(), a.neg()];
        let mut s = col.clone();
        for _ in 0..r {
            let dot = row.iter().zip(&s).fold(like.zero_like(), |acc, (x, y)| acc.add(&x.mul(y)));
            t.push(dot.neg());
            s = (0..r)
                .map(|i| (0..r).fold(like.zero_like(), |acc, j| acc.add(&m[i][j].mul(&s[j]))))
                .collect();
        }
        let mut nv = vec![like.zero_like(); r + 2];
        for (i, slot) in nv.iter_mut().enumerate() {
            let mut acc = like.zero_like();
            for j in 0..=i.min(r) {
                if i - j < t.len() {
                    acc = acc.add(&t[i - j].mul(&v[j]));
                }
            }
            *slot = acc;
        }
        v = nv;
    }
    let c = v[n].clone();
    if n.is_multiple_of(2) { c } else { c.neg() }
}

/// Solve `M x = b` over a field when `M` is square and invertible.
pub fn solve_field<K: Field>(m: &[Vec<K>], b: &[K]) -> Option<Vec<K>> {
    let n = m.len();
    let mut a: Vec<Vec<K>> = m.iter().zip(b).map(|(row, bi)| {
        let mut r = row.clone();
        r.push(bi.clone());
        r
    }).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let inv = a[col][col].inv()?;
        for c in col..=n {
            a[col][c] = a[col][c].mul(&inv);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let v = a[col][c].mul(&f);
                    a[r][c] = a[r][c].sub(&v);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::super::field::{BaseField, Fe};
    use super::*;

    fn mat(k: &BaseField, rows: &[&[i64]]) -> Vec<Vec<Fe>> {
        rows.iter().map(|r| r.iter().map(|&x| k.from_i64(x)).collect()).collect()
    }

    #[test]
    fn berkowitz_agrees_with_elimination() {
        let k = BaseField::Rational;
        let cases: [&[&[i64]]; 4] = [
            &[&[2]],
            &[&[1, 2], &[3, 4]],
            &[&[0, 1, 2], &[3, 0, 5], &[6, 7, 0]],
            &[&[1, 2, 3, 4], &[0, 1, 0, 2], &[5, 0, 1, 1], &[2, 2, 0, 3]],
        ];
        for c in cases {
            let m = mat(&k, c);
            assert_eq!(det_ring(&m, &k.one()), det_field(&m, &k.one()));
        }
    }

    #[test]
    fn solve_small() {
        let k = BaseField::gf_q(7).unwrap();
        let m = mat(&k, &[&[1, 2], &[3, 4]]);
        let x = solve_field(&m, &[k.from_i64(5), k.from_i64(6)]).unwrap();
        assert_eq!(m[0][0].mul(&x[0]).add(&m[0][1].mul(&x[1])), k.from_i64(5));
    }
}
