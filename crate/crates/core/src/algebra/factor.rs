//! Univariate factorization: Cantor-Zassenhaus over `GF(q)`, rational roots over `QQ`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{BaseField, Fe, Ring};
use super::poly::{FPoly, Poly};
use crate::{Error, Result};

const FACTOR_SEED: u64 = 0x5eed_cafe;
const SMALL_FIELD: u64 = 64;

/// Linear factors of a squarefree monic polynomial found by evaluation, and the cofactor.
fn strip_roots(f: &FPoly, field: &BaseField) -> (Vec<FPoly>, FPoly) {
    let mut rest = f.clone();
    let mut roots = Vec::new();
    for a in field.elements() {
        if rest.deg0() == 0 {
            break;
        }
        if rest.eval(&a).is_zero() {
            let lin = FPoly::linear(&a);
            rest = rest.div_exact(&lin).expect("root");
            roots.push(lin);
        }
    }
    (roots, rest)
}

/// Monic irreducible factors with multiplicities, plus the leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fe,
    pub factors: Vec<(FPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> FPoly {
        let mut acc = FPoly::constant(self.unit.clone());
        for (f, e) in &self.factors {
            acc = acc.mul(&f.pow(*e as u64));
        }
        acc
    }
}

/// Factor a nonzero polynomial over its base field.
pub fn factor(p: &FPoly) -> Result<Factorization> {
    factor_seeded(p, FACTOR_SEED)
}

pub fn factor_seeded(p: &FPoly, seed: u64) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let unit = p.lead();
    let field = unit.field();
    let monic = p.monic();
    let mut acc: BTreeMap<FPoly, u32> = BTreeMap::new();
    match &field {
        BaseField::Gf(_) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let small = field.size().is_some_and(|q| q <= SMALL_FIELD);
            for (sqf, mult) in squarefree(&monic) {
                let sqf = if small {
                    let (roots, rest) = strip_roots(&sqf, &field);
                    for r in roots {
                        *acc.entry(r).or_insert(0) += mult;
                    }
                    // Without roots, degree at most 3 means irreducible.
                    if rest.deg0() <= 3 {
                        if rest.deg0() > 0 {
                            *acc.entry(rest).or_insert(0) += mult;
                        }
                        continue;
                    }
                    rest
                } else {
                    sqf
                };
                for (g, d) in distinct_degree(&sqf) {
                    for f in equal_degree(&g, d, &mut rng) {
                        *acc.entry(f).or_insert(0) += mult;
                    }
                }
            }
        }
        BaseField::Rational => {
            for (f, e) in factor_rational(&monic)? {
                *acc.entry(f).or_insert(0) += e;
            }
        }
    }
    Ok(Factorization { unit, factors: acc.into_iter().collect() })
}

/// Squarefree decomposition of a monic polynomial over `GF(q)`.
pub fn squarefree(f: &FPoly) -> Vec<(FPoly, u32)> {
    let mut out = Vec::new();
    if f.deg0() == 0 {
        return out;
    }
    let p = f.lead().field().characteristic();
    let df = f.derivative();
    if df.is_zero() {
        // f = g(t^p)
        let g = pth_root_poly(f, p);
        for (h, m) in squarefree(&g) {
            out.push((h, m * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while w.deg0() > 0 {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if fac.deg0() > 0 {
            out.push((fac, i));
        }
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    if c.deg0() > 0 {
        let g = pth_root_poly(&c, p);
        for (h, m) in squarefree(&g) {
            out.push((h, m * p as u32));
        }
    }
    out
}

fn pth_root_poly(f: &FPoly, p: u64) -> FPoly {
    let p = p as usize;
    let v: Vec<Fe> = (0..=f.deg0() / p).map(|i| f.coeff(i * p).pth_root()).collect();
    Poly::new(v, f.zero_coeff().clone())
}

fn frobenius(h: &FPoly, q: u64, m: &FPoly) -> FPoly {
    h.pow_mod(&[q], m)
}

/// Distinct-degree factorization of a squarefree monic polynomial.
pub fn distinct_degree(f: &FPoly) -> Vec<(FPoly, usize)> {
    let q = f.lead().field().size().expect("finite field");
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FPoly::x(&f.lead());
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.deg0() >= 2 * (d + 1) {
        d += 1;
        h = frobenius(&h, q, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.deg0() > 0 {
            out.push((g.clone(), d));
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
        }
    }
    if rest.deg0() > 0 {
        let n = rest.deg0();
        out.push((rest, n));
    }
    out
}

/// Equal-degree splitting of a product of distinct irreducibles of degree `d`.
pub fn equal_degree<R: Rng>(f: &FPoly, d: usize, rng: &mut R) -> Vec<FPoly> {
    let n = f.deg0();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.lead().field();
    let q = field.size().expect("finite field");
    let p = field.characteristic();
    loop {
        let coeffs: Vec<Fe> = (0..n).map(|_| field.random(rng)).collect();
        let a = Poly::new(coeffs, field.zero());
        if a.deg0() == 0 {
            continue;
        }
        let g = a.gcd(f);
        if g.deg0() > 0 && g.deg0() < n {
            return split_both(f, &g, d, rng);
        }
        let b = if p == 2 {
            // Absolute trace a + a^2 + ... + a^(2^(kd-1)).
            let k = (q.trailing_zeros() as usize) * d;
            let mut acc = a.rem(f);
            let mut cur = acc.clone();
            for _ in 1..k {
                cur = cur.mul_mod(&cur, f);
                acc = acc.add(&cur);
            }
            acc
        } else {
            // a^((q^d - 1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q-1)/2).
            let mut norm = a.rem(f);
            let mut cur = a.rem(f);
            for _ in 1..d {
                cur = frobenius(&cur, q, f);
                norm = norm.mul_mod(&cur, f);
            }
            norm.pow_mod(&[(q - 1) / 2], f).sub(&FPoly::one(&field.zero()))
        };
        let g = b.gcd(f);
        if g.deg0() > 0 && g.deg0() < n {
            return split_both(f, &g, d, rng);
        }
    }
}

fn split_both<R: Rng>(f: &FPoly, g: &FPoly, d: usize, rng: &mut R) -> Vec<FPoly> {
    let h = f.div_exact(g).expect("gcd divides");
    let mut out = equal_degree(g, d, rng);
    out.extend(equal_degree(&h, d, rng));
    out
}

/// Rabin's irreducibility test over `GF(q)`.
pub fn is_irreducible(f: &FPoly) -> bool {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    match f.lead().field() {
        BaseField::Gf(c) => {
            let q = c.q();
            let f = f.monic();
            let x = FPoly::x(&f.lead());
            let mut powers = vec![x.rem(&f)];
            for _ in 0..n {
                let next = frobenius(powers.last().expect("nonempty"), q, &f);
                powers.push(next);
            }
            if !powers[n].sub(&x).rem(&f).is_zero() {
                return false;
            }
            for r in prime_divisors(n) {
                let g = powers[n / r].sub(&x).gcd(&f);
                if g.deg0() != 0 {
                    return false;
                }
            }
            true
        }
        BaseField::Rational => factor(f).map(|fa| fa.factors.len() == 1 && fa.factors[0].1 == 1).unwrap_or(false),
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All monic polynomials of degree `d` over a finite field, in index order.
pub fn monic_polys(field: &BaseField, d: usize) -> Vec<FPoly> {
    let q = field.size().expect("finite field");
    let total = q.pow(d as u32);
    (0..total)
        .map(|mut idx| {
            let mut v = Vec::with_capacity(d + 1);
            for _ in 0..d {
                v.push(field.elem(idx % q));
                idx /= q;
            }
            v.push(field.one());
            Poly::new(v, field.zero())
        })
        .collect()
}

/// All monic irreducibles of degree `d` over a finite field.
pub fn monic_irreducibles(field: &BaseField, d: usize) -> Vec<FPoly> {
    monic_polys(field, d).into_iter().filter(is_irreducible).collect()
}

fn small_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let nn = n.to_u64().filter(|&v| v <= 1_000_000_000_000).ok_or_else(|| {
        Error::Unsupported(format!("rational root search with constant {n}"))
    })?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= nn {
        if nn % d == 0 {
            out.push(BigInt::from(d));
            if d * d != nn {
                out.push(BigInt::from(nn / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

/// Rational roots are split off; what remains must have degree at most 3.
fn factor_rational(f: &FPoly) -> Result<Vec<(FPoly, u32)>> {
    let field = BaseField::Rational;
    let mut out: Vec<(FPoly, u32)> = Vec::new();
    let mut rest = f.clone();
    // Strip t^k first so the constant term is nonzero.
    let t = FPoly::x(&field.one());
    let (k, r) = rest.split_power(&t);
    if k > 0 {
        out.push((t, k));
        rest = r;
    }
    loop {
        if rest.deg0() == 0 {
            break;
        }
        let ints = integer_coeffs(&rest);
        let a0 = ints[0].clone();
        let an = ints.last().expect("nonzero").clone();
        let mut found = None;
        'search: for num in small_divisors(&a0)? {
            for den in small_divisors(&an)? {
                for sign in [1i32, -1] {
                    let r = BigRational::new(num.clone() * sign, den.clone());
                    let root = Fe::Q(r);
                    if rest.eval(&root).is_zero() {
                        found = Some(root);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(root) => {
                let lin = FPoly::linear(&root);
                let (m, r) = rest.split_power(&lin);
                out.push((lin, m));
                rest = r;
            }
            None => {
                if rest.deg0() <= 3 {
                    out.push((rest.monic(), 1));
                    break;
                }
                return Err(Error::Unsupported(format!(
                    "factoring {} over QQ (no rational roots, degree > 3)",
                    rest.render("t")
                )));
            }
        }
    }
    Ok(out)
}

fn integer_coeffs(f: &FPoly) -> Vec<BigInt> {
    let rats: Vec<BigRational> = f.coeffs().iter().map(|c| c.as_rational().expect("rational").clone()).collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    rats.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::poly::fpoly;

    fn trial_irreducible(f: &FPoly) -> bool {
        let field = f.lead().field();
        let n = f.deg0();
        if n == 0 {
            return false;
        }
        (1..=n / 2).all(|d| monic_polys(&field, d).iter().all(|g| !f.rem(g).is_zero()))
    }

    #[test]
    fn t2_plus_1_over_f3() {
        let k = BaseField::gf_q(3).unwrap();
        let fa = factor(&fpoly(&k, &[1, 0, 1])).unwrap();
        assert_eq!(fa.factors, vec![(fpoly(&k, &[1, 0, 1]), 1)]);
    }

    #[test]
    fn t2_minus_1_over_f3() {
        let k = BaseField::gf_q(3).unwrap();
        let fa = factor(&fpoly(&k, &[-1, 0, 1])).unwrap();
        assert_eq!(fa.factors, vec![(fpoly(&k, &[1, 1]), 1), (fpoly(&k, &[-1, 1]), 1)]);
    }

    #[test]
    fn zero_input() {
        let k = BaseField::gf_q(3).unwrap();
        assert_eq!(factor(&Poly::zero(&k.zero())), Err(Error::ZeroInput));
    }

    #[test]
    fn rabin_matches_trial_division() {
        for q in [2u64, 3, 4, 5, 9] {
            let k = BaseField::gf_q(q).unwrap();
            for d in 1..=3 {
                for f in monic_polys(&k, d) {
                    assert_eq!(is_irreducible(&f), trial_irreducible(&f), "{f} over GF({q})");
                }
            }
        }
    }

    #[test]
    fn char_two_and_powers() {
        let k = BaseField::gf_q(4).unwrap();
        let f = fpoly(&k, &[1, 1, 1]).pow(4).mul(&fpoly(&k, &[0, 1]).pow(2));
        let fa = factor(&f).unwrap();
        assert_eq!(fa.expand(), f);
        for (g, _) in &fa.factors {
            assert!(trial_irreducible(g));
        }
    }

    #[test]
    fn rational_roots() {
        let k = BaseField::Rational;
        let f = fpoly(&k, &[-2, 1]).mul(&fpoly(&k, &[1, 0, 1])).mul(&fpoly(&k, &[0, 3]));
        let fa = factor(&f).unwrap();
        assert_eq!(fa.expand(), f);
        assert_eq!(fa.factors.len(), 3);
    }
}
