//! Base fields: the rationals and `GF(p^k)`.
//!
//! An element of `GF(p^k)` is the integer `v = c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! encoding the residue `c_0 + c_1 a + ...` modulo the defining polynomial of `a`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::{Error, Result};

/// Commutative ring operations on values that carry their own context.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut acc = self.one_like();
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
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn pow_i(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow_u(e as u64))
        } else {
            self.inv().map(|i| i.pow_u(e.unsigned_abs()))
        }
    }
}

const TABLE_LIMIT: u64 = 1 << 20;

/// Context of a finite field `GF(p^k)`.
pub struct GfCtx {
    p: u64,
    k: u32,
    q: u64,
    /// Defining monic polynomial, low to high, length `k + 1`.
    modulus: Vec<u64>,
    generator: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for GfCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
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

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

// Dense F_p polynomial helpers used only while building a context.
fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let d = r.len() - 1;
        let c = r[d] * lead_inv % p;
        for i in 0..=dm {
            let idx = d - dm + i;
            r[idx] = (r[idx] + p - c * m[i] % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_is_irreducible(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    if k == 0 {
        return false;
    }
    // Trial division by every monic polynomial of degree 1..=k/2.
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                cand.push(x % p);
                x /= p;
            }
            cand.push(1);
            if fp_rem(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl GfCtx {
    /// `GF(p^k)` with the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u64, k: u32) -> Result<Arc<GfCtx>> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::Invalid("extension degree 0".into()));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= TABLE_LIMIT)
            .ok_or_else(|| Error::Unsupported(format!("field size {p}^{k}")))?;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            let mut found = None;
            for idx in 0..q {
                let mut m = Vec::with_capacity(k as usize + 1);
                let mut x = idx;
                for _ in 0..k {
                    m.push(x % p);
                    x /= p;
                }
                m.push(1);
                if fp_is_irreducible(&m, p) {
                    found = Some(m);
                    break;
                }
            }
            found.expect("irreducible polynomials exist in every degree")
        };
        Self::with_modulus(p, modulus)
    }

    /// `GF(p^k)` defined by an explicit monic modulus (low to high).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Arc<GfCtx>> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        let k = modulus.len().saturating_sub(1) as u32;
        if k == 0 || modulus[k as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::Invalid("modulus must be monic with reduced coefficients".into()));
        }
        if !fp_is_irreducible(&modulus, p) {
            return Err(Error::NotIrreducible(format!("{modulus:?} over GF({p})")));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= TABLE_LIMIT)
            .ok_or_else(|| Error::Unsupported(format!("field size {p}^{k}")))?;
        let mut ctx = GfCtx {
            p,
            k,
            q,
            modulus,
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let order = q - 1;
        let primes = prime_factors(order);
        let g = (1..q)
            .find(|&g| primes.iter().all(|&r| ctx.pow_slow(g, order / r) != 1))
            .expect("multiplicative group is cyclic");
        ctx.generator = g;
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u64;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x as u32;
            log[x as usize] = i as u32;
            x = ctx.mul_slow(x, g);
        }
        ctx.exp = exp;
        ctx.log = log;
        Ok(Arc::new(ctx))
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    pub fn generator(&self) -> u64 {
        self.generator
    }

    fn digits(&self, mut v: u64) -> Vec<u64> {
        let mut d = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            d.push(v % self.p);
            v /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.k as usize - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut r = fp_rem(&prod, &self.modulus, self.p);
        r.resize(self.k as usize, 0);
        self.undigits(&r)
    }

    fn pow_slow(&self, b: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        let mut b = b;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let mut a = a;
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(s % (self.q - 1)) as usize] as u64
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize] as u64;
        Some(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize] as u64)
    }

    /// Discrete logarithm to the stored generator.
    pub fn dlog(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.log[a as usize] as u64)
    }

    pub fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn fmt_value(&self, v: u64) -> String {
        if self.k == 1 {
            return format!("{v}");
        }
        let d = self.digits(v);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "a".into(),
                (1, c) => format!("{c}*a"),
                (i, 1) => format!("a^{i}"),
                (i, c) => format!("{c}*a^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// An element of a base field.
#[derive(Clone)]
pub enum Fe {
    Q(BigRational),
    Gf(Arc<GfCtx>, u64),
}

/// A base field, used to mint elements.
#[derive(Clone, Debug)]
pub enum BaseField {
    Rational,
    Gf(Arc<GfCtx>),
}

impl PartialEq for BaseField {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (BaseField::Rational, BaseField::Rational) => true,
            (BaseField::Gf(a), BaseField::Gf(b)) => Arc::ptr_eq(a, b) || (a.p == b.p && a.modulus == b.modulus),
            _ => false,
        }
    }
}
impl Eq for BaseField {}

impl BaseField {
    pub fn gf(p: u64, k: u32) -> Result<Self> {
        Ok(BaseField::Gf(GfCtx::new(p, k)?))
    }

    /// `GF(q)` for a prime power `q`.
    pub fn gf_q(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::Invalid(format!("GF({q})")));
        }
        let p = prime_factors(q)[0];
        let mut k = 0;
        let mut x = q;
        while x.is_multiple_of(p) {
            x /= p;
            k += 1;
        }
        if x != 1 {
            return Err(Error::Invalid(format!("{q} is not a prime power")));
        }
        Self::gf(p, k)
    }

    pub fn zero(&self) -> Fe {
        self.from_i64(0)
    }

    pub fn one(&self) -> Fe {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Fe {
        match self {
            BaseField::Rational => Fe::Q(BigRational::from_integer(BigInt::from(n))),
            BaseField::Gf(c) => Fe::Gf(c.clone(), c.from_i64(n)),
        }
    }

    pub fn from_rational(&self, num: &BigInt, den: &BigInt) -> Result<Fe> {
        if den.is_zero() {
            return Err(Error::Invalid("division by zero".into()));
        }
        match self {
            BaseField::Rational => Ok(Fe::Q(BigRational::new(num.clone(), den.clone()))),
            BaseField::Gf(c) => {
                let p = BigInt::from(c.p);
                let n = num.mod_floor(&p).to_u64().unwrap_or(0);
                let d = den.mod_floor(&p).to_u64().unwrap_or(0);
                let d = c.inv(d).ok_or_else(|| Error::Invalid(format!("denominator divisible by {}", c.p)))?;
                Ok(Fe::Gf(c.clone(), c.mul(n, d)))
            }
        }
    }

    /// The extension generator `a` (or `p` itself for prime fields).
    pub fn gen_a(&self) -> Option<Fe> {
        match self {
            BaseField::Gf(c) if c.k > 1 => Some(Fe::Gf(c.clone(), c.p)),
            _ => None,
        }
    }

    pub fn elem(&self, v: u64) -> Fe {
        match self {
            BaseField::Rational => self.from_i64(v as i64),
            BaseField::Gf(c) => Fe::Gf(c.clone(), v % c.q),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Rational => 0,
            BaseField::Gf(c) => c.p,
        }
    }

    pub fn size(&self) -> Option<u64> {
        match self {
            BaseField::Rational => None,
            BaseField::Gf(c) => Some(c.q),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, BaseField::Gf(_))
    }

    /// All elements of a finite field, in index order.
    pub fn elements(&self) -> Vec<Fe> {
        match self {
            BaseField::Rational => Vec::new(),
            BaseField::Gf(c) => (0..c.q).map(|v| Fe::Gf(c.clone(), v)).collect(),
        }
    }

    pub fn primitive(&self) -> Option<Fe> {
        match self {
            BaseField::Rational => None,
            BaseField::Gf(c) => Some(Fe::Gf(c.clone(), c.generator)),
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        match self {
            BaseField::Rational => {
                let n: i64 = rng.gen_range(-9..=9);
                let d: i64 = rng.gen_range(1..=5);
                Fe::Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
            BaseField::Gf(c) => Fe::Gf(c.clone(), rng.gen_range(0..c.q)),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            BaseField::Rational => "QQ".into(),
            BaseField::Gf(c) => format!("GF({})", c.q),
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Fe {
    pub fn field(&self) -> BaseField {
        match self {
            Fe::Q(_) => BaseField::Rational,
            Fe::Gf(c, _) => BaseField::Gf(c.clone()),
        }
    }

    /// Index of a finite-field element; `None` over the rationals.
    pub fn index(&self) -> Option<u64> {
        match self {
            Fe::Q(_) => None,
            Fe::Gf(_, v) => Some(*v),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Fe::Q(r) => Some(r),
            Fe::Gf(..) => None,
        }
    }

    /// Discrete logarithm to the field's primitive element.
    pub fn dlog(&self) -> Option<u64> {
        match self {
            Fe::Q(_) => None,
            Fe::Gf(c, v) => c.dlog(*v),
        }
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn unit_order(&self) -> Option<u64> {
        match self {
            Fe::Q(_) => None,
            Fe::Gf(c, _) => Some(c.q - 1),
        }
    }

    /// Inverse Frobenius, `x^(1/p)`.
    pub fn pth_root(&self) -> Fe {
        match self {
            Fe::Q(_) => self.clone(),
            Fe::Gf(c, _) => self.pow_u(c.q / c.p),
        }
    }
}

fn same_ctx(a: &Arc<GfCtx>, b: &Arc<GfCtx>) {
    assert!(
        Arc::ptr_eq(a, b) || (a.p == b.p && a.modulus == b.modulus),
        "mixed field elements"
    );
}

impl PartialEq for Fe {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Fe::Q(a), Fe::Q(b)) => a == b,
            (Fe::Gf(c, a), Fe::Gf(d, b)) => a == b && c.q == d.q,
            _ => false,
        }
    }
}
impl Eq for Fe {}

impl PartialOrd for Fe {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fe {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Fe::Q(a), Fe::Q(b)) => a.cmp(b),
            (Fe::Gf(_, a), Fe::Gf(_, b)) => a.cmp(b),
            (Fe::Q(_), Fe::Gf(..)) => Ordering::Less,
            (Fe::Gf(..), Fe::Q(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fe::Q(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Fe::Gf(c, v) => f.write_str(&c.fmt_value(*v)),
        }
    }
}

impl Ring for Fe {
    fn zero_like(&self) -> Self {
        self.int_like(0)
    }
    fn one_like(&self) -> Self {
        self.int_like(1)
    }
    fn is_zero(&self) -> bool {
        match self {
            Fe::Q(r) => r.is_zero(),
            Fe::Gf(_, v) => *v == 0,
        }
    }
    fn is_one(&self) -> bool {
        match self {
            Fe::Q(r) => r.is_one(),
            Fe::Gf(_, v) => *v == 1,
        }
    }
    fn add(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Fe::Q(a), Fe::Q(b)) => Fe::Q(a + b),
            (Fe::Gf(c, a), Fe::Gf(d, b)) => {
                same_ctx(c, d);
                Fe::Gf(c.clone(), c.add(*a, *b))
            }
            _ => panic!("mixed field elements"),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Fe::Q(a), Fe::Q(b)) => Fe::Q(a * b),
            (Fe::Gf(c, a), Fe::Gf(d, b)) => {
                same_ctx(c, d);
                Fe::Gf(c.clone(), c.mul(*a, *b))
            }
            _ => panic!("mixed field elements"),
        }
    }
    fn neg(&self) -> Self {
        match self {
            Fe::Q(a) => Fe::Q(-a),
            Fe::Gf(c, a) => Fe::Gf(c.clone(), c.neg(*a)),
        }
    }
    fn int_like(&self, n: i64) -> Self {
        match self {
            Fe::Q(_) => Fe::Q(BigRational::from_integer(BigInt::from(n))),
            Fe::Gf(c, _) => Fe::Gf(c.clone(), c.from_i64(n)),
        }
    }
    fn pow_u(&self, e: u64) -> Self {
        match self {
            Fe::Gf(c, v) => {
                if *v == 0 {
                    return Fe::Gf(c.clone(), if e == 0 { 1 } else { 0 });
                }
                let l = c.log[*v as usize] as u128 * e as u128 % (c.q - 1) as u128;
                Fe::Gf(c.clone(), c.exp[l as usize] as u64)
            }
            Fe::Q(r) => {
                let mut acc = BigRational::one();
                for _ in 0..e {
                    acc *= r;
                }
                Fe::Q(acc)
            }
        }
    }
}

impl Field for Fe {
    fn inv(&self) -> Option<Self> {
        match self {
            Fe::Q(r) => (!r.is_zero()).then(|| Fe::Q(r.recip())),
            Fe::Gf(c, v) => c.inv(*v).map(|i| Fe::Gf(c.clone(), i)),
        }
    }
}

/// Absolute value of a rational, for display and heights.
pub fn rational_height(r: &BigRational) -> BigInt {
    r.numer().abs().max(r.denom().abs())
}
