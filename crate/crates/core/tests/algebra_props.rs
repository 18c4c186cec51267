use std::sync::Arc;

use deligne_core::algebra::factor::{factor, is_irreducible, monic_irreducibles};
use deligne_core::algebra::mpoly::MPoly;
use deligne_core::algebra::residue::Residue;
use deligne_core::algebra::resultant::{resultant, resultant_desc};
use deligne_core::algebra::snf::{smith_normal_form, IntMatrix};
use deligne_core::algebra::{BaseField, FPoly, Fe, Field, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const QS: [u64; 4] = [2, 3, 5, 9];

fn random_poly(k: &BaseField, deg: usize, rng: &mut ChaCha8Rng) -> FPoly {
    let mut c: Vec<Fe> = (0..deg).map(|_| k.random(rng)).collect();
    c.push(k.random_nonzero(rng));
    FPoly::new(c, k.zero())
}

// Norm as the product of the Frobenius conjugates a, a^q, ..., a^(q^(k-1)).
fn conjugate_norm(a: &Residue<Fe>, q: u64) -> Fe {
    let k = a.degree();
    let mut acc = a.one_like();
    let mut c = a.clone();
    for _ in 0..k {
        acc = acc.mul(&c);
        c = c.pow_u(q);
    }
    acc.as_scalar().expect("norms are scalars")
}

// d_k = D_k / D_(k-1) with D_k the gcd of the k x k minors.
fn determinantal_invariants(m: &IntMatrix) -> Vec<BigInt> {
    fn det(rows: &[usize], cols: &[usize], m: &IntMatrix) -> BigInt {
        if rows.len() == 1 {
            return m.get(rows[0], cols[0]).clone();
        }
        let mut acc = BigInt::zero();
        for (j, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = m.get(rows[0], c) * det(&rows[1..], &rest, m);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for r in subsets(m.rows(), k) {
            for c in subsets(m.cols(), k) {
                g = g.gcd(&det(&r, &c, m));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

#[test]
fn gf9_uses_t2_plus_1() {
    let k = BaseField::gf_q(9).unwrap();
    let a = k.gen_a().unwrap();
    assert_eq!(a.mul(&a), k.from_i64(-1));
    assert_eq!(format!("{}", a.add(&k.one())), "a+1");
}

#[test]
fn resultant_sign_convention() {
    // Res_y(x - y, y - z) = z - x, coefficients listed from the highest power of y.
    let k = BaseField::gf_q(5).unwrap();
    let one = k.one();
    let v = |i| MPoly::var(3, i, &one);
    let f = [MPoly::one(3, &one).neg(), v(0)];
    let g = [MPoly::one(3, &one), v(2).neg()];
    let r = resultant_desc(&f, &g, &MPoly::one(3, &one));
    assert_eq!(r, v(2).sub(&v(0)));
}

#[test]
fn irreducible_counts() {
    // Necklace counts: (1/d) sum mu(d/e) q^e.
    for (q, d, n) in [(2u64, 3usize, 2usize), (3, 2, 3), (5, 2, 10), (2, 4, 3), (9, 2, 36)] {
        let k = BaseField::gf_q(q).unwrap();
        assert_eq!(monic_irreducibles(&k, d).len(), n, "q={q} d={d}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(seed in any::<u64>(), qi in 0usize..4) {
        let k = BaseField::gf_q(QS[qi]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (k.random(&mut rng), k.random(&mut rng), k.random(&mut rng));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            prop_assert!(a.pow_u(QS[qi] - 1).is_one());
        }
    }

    #[test]
    fn factorization_roundtrip(seed in any::<u64>(), qi in 0usize..4, deg in 1usize..9) {
        let k = BaseField::gf_q(QS[qi]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&k, deg, &mut rng);
        let fa = factor(&p).unwrap();
        let mut acc = FPoly::constant(fa.unit.clone());
        for (f, e) in &fa.factors {
            prop_assert!(f.is_monic() && is_irreducible(f));
            acc = acc.mul(&f.pow(*e as u64));
        }
        prop_assert_eq!(acc, p);
    }

    #[test]
    fn resultant_multiplicative(seed in any::<u64>(), qi in 0usize..4) {
        let k = BaseField::gf_q(QS[qi]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&k, rng.gen_range(1..4), &mut rng);
        let g = random_poly(&k, rng.gen_range(1..4), &mut rng);
        let h = random_poly(&k, rng.gen_range(1..4), &mut rng);
        let lhs = resultant(&f.mul(&g), &h).unwrap();
        let rhs = resultant(&f, &h).unwrap().mul(&resultant(&g, &h).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(resultant(&f, &h).unwrap().is_zero(), f.gcd(&h).deg0() > 0);
    }

    #[test]
    fn norm_is_product_of_conjugates(seed in any::<u64>(), qi in 0usize..4, d in 1usize..5) {
        let k = BaseField::gf_q(QS[qi]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let irr = monic_irreducibles(&k, d);
        let m = Arc::new(irr[rng.gen_range(0..irr.len())].clone());
        let a = Residue::new(&random_poly(&k, d.saturating_sub(1), &mut rng), &m);
        prop_assert_eq!(a.norm().unwrap(), conjugate_norm(&a, QS[qi]));
    }

    #[test]
    fn smith_matches_determinantal_divisors(entries in proptest::collection::vec(-6i64..=6, 12), r in 1usize..4) {
        let c = 12 / 4;
        let m = IntMatrix::from_rows(r, c, &entries[..r * c]);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.u.det().abs().is_one() && s.v.det().abs().is_one());
        let diag: Vec<BigInt> = s.diagonal().into_iter().filter(|x| !x.is_zero()).collect();
        prop_assert_eq!(diag, determinantal_invariants(&m));
    }
}
