//! Norms of functions along divisors, the scalar Deligne pairing and its torsor of generators.

use alloc::format;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::factor::is_irreducible;
use crate::algebra::{BaseField, FPoly, Fe, Field, Ring};
use crate::curve::{ClosedPoint, Divisor, FactoredFunction};
use crate::{Error, Result};

/// `prod_P N(g(P))^{n_P}` for any divisor disjoint from `div g`.
pub fn norm_on_divisor(d: &Divisor, g: &FactoredFunction) -> Result<Fe> {
    let mut acc = g.field().one();
    for (p, n) in d.terms() {
        let v = g.evaluate_at(p).map_err(|_| Error::NotTransverse)?;
        let nv = v.norm()?;
        acc = acc.mul(&nv.pow_i(*n).expect("unit"));
    }
    Ok(acc)
}

/// Norm of `g` along an effective divisor.
pub fn norm_along_divisor(d: &Divisor, g: &FactoredFunction) -> Result<Fe> {
    if !d.is_effective() {
        return Err(Error::Invalid(format!("divisor {d} is not effective")));
    }
    norm_on_divisor(d, g)
}

/// `g` evaluated on `div f`; needs disjoint supports.
pub fn deligne_scalar(f: &FactoredFunction, g: &FactoredFunction) -> Result<Fe> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch);
    }
    let df = f.divisor();
    if df.meets(&g.divisor()) {
        return Err(Error::NotTransverse);
    }
    norm_on_divisor(&df, g)
}

/// Output of `move_divisor`: `moved = original + div(correction)`.
#[derive(Clone, Debug)]
pub struct Moved {
    pub moved: Divisor,
    pub correction: FactoredFunction,
}

/// Replaces every point of `d` lying on `avoid` by a point of the same degree off both supports,
/// through a principal divisor. Pairing against `g` changes by `norm_on_divisor(div correction, g)`.
pub fn move_divisor(d: &Divisor, avoid: &Divisor, field: &BaseField) -> Result<Moved> {
    let mut blocked: Vec<ClosedPoint> = d.support();
    blocked.extend(avoid.support());
    let mut correction = FactoredFunction::one(field);
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d6f7665);
    for (p, n) in d.terms() {
        if !avoid.terms().contains_key(p) {
            continue;
        }
        let target = fresh_point(p, &blocked, field, &mut rng)?;
        blocked.push(target.clone());
        // div(pi_target / pi_p) = target - p; at infinity pi_p is replaced by 1.
        let h = FactoredFunction::of_point(&target, field).div(&FactoredFunction::of_point(p, field));
        correction = correction.mul(&h.pow(*n));
    }
    let moved = d.add(&correction.divisor());
    debug_assert!(!moved.meets(avoid));
    Ok(Moved { moved, correction })
}

fn fresh_point(p: &ClosedPoint, blocked: &[ClosedPoint], field: &BaseField, rng: &mut ChaCha8Rng) -> Result<ClosedPoint> {
    let ok = |c: &ClosedPoint| !c.is_infinity() && !blocked.contains(c);
    let base = match p {
        ClosedPoint::Infinity => FPoly::x(&field.one()),
        ClosedPoint::Finite(pi) => (**pi).clone(),
    };
    let one = field.one();
    // Shifts pi(t - c) stay irreducible.
    let shifts: Vec<Fe> = if field.is_finite() { field.elements() } else { (1..64).map(|i| field.from_i64(i)).collect() };
    for c in shifts {
        let shifted = base.compose(&FPoly::new(alloc::vec![c.neg(), one.clone()], field.zero()));
        let cand = ClosedPoint::from_irreducible(shifted.monic());
        if ok(&cand) {
            return Ok(cand);
        }
    }
    if field.is_finite() {
        let d = p.degree();
        for _ in 0..10_000 {
            let mut coeffs: Vec<Fe> = (0..d).map(|_| field.random(rng)).collect();
            coeffs.push(one.clone());
            let f = FPoly::new(coeffs, field.zero());
            if is_irreducible(&f) {
                let cand = ClosedPoint::from_irreducible(f);
                if ok(&cand) {
                    return Ok(cand);
                }
            }
        }
    }
    Err(Error::SearchFailed(format!("no free point of degree {}", p.degree())))
}

/// A generator `<s, t>` of the Deligne line: rational sections of `O(D)` and `O(E)`, whose divisors are
/// `D + div s` and `E + div t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub s: FactoredFunction,
    pub t: FactoredFunction,
}

/// The line `<O(D), O(E)>` over the base field, presented by generators and transition scalars.
/// `<hs, t> = N_{E + div t}(h) <s, t>` and `<s, kt> = N_{D + div s}(k) <s, t>`.
#[derive(Clone, Debug)]
pub struct DeligneLine {
    pub field: BaseField,
    pub d: Divisor,
    pub e: Divisor,
    pub base: Generator,
}

impl DeligneLine {
    pub fn new(d: Divisor, e: Divisor, base: Generator) -> Result<Self> {
        let field = base.s.field();
        let line = DeligneLine { field, d, e, base };
        line.check(&line.base)?;
        Ok(line)
    }

    pub fn section_divisors(&self, g: &Generator) -> (Divisor, Divisor) {
        (self.d.add(&g.s.divisor()), self.e.add(&g.t.divisor()))
    }

    /// A generator is admissible when its two section divisors are disjoint.
    pub fn check(&self, g: &Generator) -> Result<()> {
        let (a, b) = self.section_divisors(g);
        if a.meets(&b) {
            return Err(Error::NotTransverse);
        }
        Ok(())
    }

    /// The scalar `c` with `to = c * from`, moving `s` first and then `t`.
    pub fn transition(&self, from: &Generator, to: &Generator) -> Result<Fe> {
        self.check(from)?;
        self.check(to)?;
        let h = to.s.div(&from.s);
        let k = to.t.div(&from.t);
        let (_, e_from) = self.section_divisors(from);
        let (d_to, _) = self.section_divisors(to);
        let a = norm_on_divisor(&e_from, &h)?;
        let b = norm_on_divisor(&d_to, &k)?;
        Ok(a.mul(&b))
    }

    /// The same scalar computed by moving `t` first; agrees with `transition` by Weil reciprocity.
    pub fn transition_other_path(&self, from: &Generator, to: &Generator) -> Result<Fe> {
        self.check(from)?;
        self.check(to)?;
        let h = to.s.div(&from.s);
        let k = to.t.div(&from.t);
        let (d_from, _) = self.section_divisors(from);
        let (_, e_to) = self.section_divisors(to);
        let a = norm_on_divisor(&d_from, &k)?;
        let b = norm_on_divisor(&e_to, &h)?;
        Ok(a.mul(&b))
    }

    /// Coordinate of a generator relative to the distinguished one.
    pub fn coordinate(&self, g: &Generator) -> Result<Fe> {
        self.transition(&self.base, g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::fpoly;

    #[test]
    fn norm_examples() {
        let k = BaseField::gf_q(3).unwrap();
        let zero = ClosedPoint::rational(&k.zero());
        let g = FactoredFunction::linear(&k.one());
        assert_eq!(norm_along_divisor(&Divisor::point(zero.clone()), &g).unwrap(), k.from_i64(-1));
        let p = ClosedPoint::new(&fpoly(&k, &[1, 0, 1])).unwrap();
        let g = FactoredFunction::linear(&k.from_i64(-1));
        assert_eq!(norm_along_divisor(&Divisor::point(p), &g).unwrap(), k.from_i64(2));
        let two_one = Divisor::from_terms([(ClosedPoint::rational(&k.one()), 2)]);
        assert!(norm_along_divisor(&two_one, &FactoredFunction::linear(&k.zero())).unwrap().is_one());
        assert_eq!(
            norm_along_divisor(&Divisor::point(zero), &FactoredFunction::linear(&k.zero())),
            Err(Error::NotTransverse)
        );
    }

    #[test]
    fn deligne_over_q() {
        let k = BaseField::Rational;
        let f = FactoredFunction::linear(&k.zero());
        let g = FactoredFunction::linear(&k.one()).div(&FactoredFunction::linear(&k.from_i64(2)));
        let half = k.from_i64(1).div(&k.from_i64(2)).unwrap();
        assert_eq!(deligne_scalar(&f, &g).unwrap(), half);
        assert_eq!(deligne_scalar(&g, &f).unwrap(), half);
        assert!(deligne_scalar(&f, &FactoredFunction::one(&k)).unwrap().is_one());
        assert_eq!(deligne_scalar(&f, &f), Err(Error::NotTransverse));
    }

    #[test]
    fn mover_produces_disjoint_divisor() {
        let k = BaseField::gf_q(5).unwrap();
        let f = FactoredFunction::linear(&k.zero()).div(&FactoredFunction::linear(&k.one()));
        let g = FactoredFunction::linear(&k.zero()).div(&FactoredFunction::linear(&k.from_i64(2)));
        let m = move_divisor(&f.divisor(), &g.divisor(), &k).unwrap();
        assert!(!m.moved.meets(&g.divisor()));
        assert_eq!(m.moved, f.mul(&m.correction).divisor());
        let fm = f.mul(&m.correction);
        assert_eq!(deligne_scalar(&fm, &g).unwrap(), deligne_scalar(&g, &fm).unwrap());
        let inf = move_divisor(&Divisor::point(ClosedPoint::Infinity), &g.divisor(), &k).unwrap();
        assert_eq!(inf.moved.degree(), 1);
        assert!(!inf.moved.meets(&g.divisor()));
    }

    #[test]
    fn line_transitions() {
        let k = BaseField::gf_q(5).unwrap();
        let pt = |a: i64| ClosedPoint::rational(&k.from_i64(a));
        let d = Divisor::from_terms([(pt(0), 1), (ClosedPoint::Infinity, -1)]);
        let e = Divisor::from_terms([(pt(1), 1), (pt(2), -1)]);
        let one = FactoredFunction::one(&k);
        let line = DeligneLine::new(d, e, Generator { s: one.clone(), t: one.clone() }).unwrap();
        let h = FactoredFunction::linear(&k.from_i64(3)).div(&FactoredFunction::linear(&k.from_i64(4)));
        let kk = FactoredFunction::linear(&k.from_i64(4)).scale(&k.from_i64(2)).unwrap();
        let to = Generator { s: h.clone(), t: kk.clone() };
        if line.check(&to).is_ok() {
            assert_eq!(line.transition(&line.base, &to).unwrap(), line.transition_other_path(&line.base, &to).unwrap());
        }
        let g1 = Generator { s: h.clone(), t: one.clone() };
        let g2 = Generator { s: h.mul(&h), t: one.clone() };
        let a = line.transition(&line.base, &g1).unwrap();
        let b = line.transition(&g1, &g2).unwrap();
        assert_eq!(line.transition(&line.base, &g2).unwrap(), a.mul(&b));
    }
}
