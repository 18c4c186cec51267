//! Bihomogeneous forms in `(x0, x1; y0, y1)` and binary forms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::factor::factor;
use super::field::{BaseField, Fe, Field, Ring};
use super::mpoly::MPoly;
use super::poly::{FPoly, Poly};
use super::resultant::resultant_desc;
use crate::{Error, Result};

pub const X0: usize = 0;
pub const X1: usize = 1;
pub const Y0: usize = 2;
pub const Y1: usize = 3;
pub const NAMES: [&str; 4] = ["x0", "x1", "y0", "y1"];

const TRIAL_LIMIT: u64 = 2_000_000;

/// A nonzero form of bidegree `(a, b)`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiForm {
    poly: MPoly,
    a: u32,
    b: u32,
}

impl PartialOrd for BiForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BiForm {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.a, self.b).cmp(&(other.a, other.b)).then_with(|| self.poly.cmp(&other.poly))
    }
}

impl fmt::Debug for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.render(&NAMES))
    }
}

impl fmt::Display for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.render(&NAMES))
    }
}

impl BiForm {
    /// Check bihomogeneity and record the bidegree.
    pub fn new(poly: MPoly) -> Result<Self> {
        if poly.nvars() != 4 {
            return Err(Error::Invalid("bihomogeneous forms have four variables".into()));
        }
        if poly.is_zero() {
            return Err(Error::ZeroInput);
        }
        let a = poly
            .homogeneous_degree(&[X0, X1])
            .ok_or_else(|| Error::Invalid(format!("{} is not homogeneous in (x0, x1)", poly.render(&NAMES))))?;
        let b = poly
            .homogeneous_degree(&[Y0, Y1])
            .ok_or_else(|| Error::Invalid(format!("{} is not homogeneous in (y0, y1)", poly.render(&NAMES))))?;
        Ok(BiForm { poly, a, b })
    }

    pub fn constant(c: Fe) -> Self {
        BiForm { poly: MPoly::constant(4, c), a: 0, b: 0 }
    }

    pub fn var(i: usize, like: &Fe) -> Self {
        BiForm::new(MPoly::var(4, i, like)).expect("variable")
    }

    /// Assemble from coefficients of `x0^i x1^(a-i) y0^j y1^(b-j)` given as `(i, j, c)`.
    pub fn from_coeffs(field: &BaseField, a: u32, b: u32, coeffs: &[(u32, u32, i64)]) -> Result<Self> {
        let one = field.one();
        let p = MPoly::from_terms(
            4,
            &one,
            coeffs
                .iter()
                .map(|&(i, j, c)| (vec![i as u16, (a - i) as u16, j as u16, (b - j) as u16], field.from_i64(c))),
        );
        let f = BiForm::new(p)?;
        if f.a != a || f.b != b {
            return Err(Error::Invalid("bidegree mismatch".into()));
        }
        Ok(f)
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.a, self.b)
    }

    pub fn field(&self) -> BaseField {
        self.poly.zero_coeff().field()
    }

    pub fn one_coeff(&self) -> Fe {
        self.poly.zero_coeff().one_like()
    }

    pub fn is_constant(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Purely in `y`: a union of fibers of the projection to the `y` line.
    pub fn is_vertical(&self) -> bool {
        self.a == 0 && self.b > 0
    }

    pub fn is_pure_x(&self) -> bool {
        self.b == 0
    }

    pub fn mul(&self, o: &Self) -> Self {
        BiForm { poly: self.poly.mul(&o.poly), a: self.a + o.a, b: self.b + o.b }
    }

    pub fn pow(&self, e: u32) -> Self {
        BiForm { poly: self.poly.pow(e), a: self.a * e, b: self.b * e }
    }

    pub fn scale(&self, c: &Fe) -> Self {
        BiForm { poly: self.poly.scale(c), a: self.a, b: self.b }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.bidegree() != o.bidegree() {
            return Err(Error::Mismatch("bidegrees differ".into()));
        }
        BiForm::new(self.poly.add(&o.poly))
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let q = self.poly.div_exact(&d.poly)?;
        Some(BiForm { poly: q, a: self.a - d.a, b: self.b - d.b })
    }

    pub fn leading_coeff(&self) -> Fe {
        self.poly.leading().map(|(_, c)| c.clone()).expect("nonzero form")
    }

    /// Scaled so the lexicographically leading coefficient is 1.
    pub fn normalized(&self) -> Self {
        let inv = self.leading_coeff().inv().expect("unit");
        self.scale(&inv)
    }

    pub fn is_normalized(&self) -> bool {
        self.leading_coeff().is_one()
    }

    /// Exchange the roles of `x` and `y`.
    pub fn transpose(&self) -> Self {
        BiForm { poly: self.poly.remap(4, &[Y0, Y1, X0, X1]), a: self.b, b: self.a }
    }

    pub fn eval(&self, vals: &[Fe; 4]) -> Fe {
        self.poly.eval(vals)
    }

    /// `F(s, 1, u, 1)` as a polynomial in `s` with coefficients in `K[u]`.
    pub fn dehomogenize(&self) -> Poly<FPoly> {
        let zero = self.poly.zero_coeff().clone();
        let upoly = FPoly::zero(&zero);
        let mut coeffs: Vec<FPoly> = vec![upoly.clone(); self.a as usize + 1];
        for (e, c) in self.poly.terms() {
            let i = e[X0] as usize;
            let j = e[Y0] as usize;
            coeffs[i] = coeffs[i].add(&FPoly::monomial(c.clone(), j));
        }
        Poly::new(coeffs, upoly)
    }

    /// Substitute `x0 = s`, `x1 = 1` when `swap` is false, else `x0 = 1`, `x1 = s`.
    pub fn dehomogenize_chart(&self, swap: bool) -> Poly<FPoly> {
        if swap {
            BiForm { poly: self.poly.remap(4, &[X1, X0, Y0, Y1]), a: self.a, b: self.b }.dehomogenize()
        } else {
            self.dehomogenize()
        }
    }

    /// The binary form in `y` when the form is vertical (or in `x` when pure in `x`).
    pub fn as_binary(&self) -> Option<(FPoly, u32, bool)> {
        if self.a == 0 {
            Some((binary_to_poly(&self.poly, Y0, Y1), self.b, true))
        } else if self.b == 0 {
            Some((binary_to_poly(&self.poly, X0, X1), self.a, false))
        } else {
            None
        }
    }

    /// Coefficients in the `x` binary form, highest power of `x0` first.
    pub fn x_coeffs(&self) -> Vec<MPoly> {
        self.poly.binary_coeffs(X0, X1, self.a)
    }

    pub fn y_coeffs(&self) -> Vec<MPoly> {
        self.poly.binary_coeffs(Y0, Y1, self.b)
    }

    pub fn render(&self) -> String {
        self.poly.render(&NAMES)
    }
}

/// `F(t, 1)` for a binary form in variables `(v0, v1)`.
pub fn binary_to_poly(p: &MPoly, v0: usize, _v1: usize) -> FPoly {
    let zero = p.zero_coeff().clone();
    let mut acc = FPoly::zero(&zero);
    for (e, c) in p.terms() {
        acc = acc.add(&FPoly::monomial(c.clone(), e[v0] as usize));
    }
    acc
}

/// Homogenize `f(t)` to degree `n` in `(v0, v1)`.
pub fn poly_to_binary(f: &FPoly, n: u32, v0: usize, v1: usize, nvars: usize) -> MPoly {
    let zero = f.zero_coeff().clone();
    let mut out = MPoly::zero(nvars, &zero);
    for (i, c) in f.coeffs().iter().enumerate() {
        let mut e = vec![0u16; nvars];
        e[v0] = i as u16;
        e[v1] = (n as usize - i) as u16;
        out.add_term(e, c.clone());
    }
    out
}

/// Form in `y` only, from a polynomial in `u = y0/y1` and a degree.
pub fn y_form(f: &FPoly, n: u32) -> BiForm {
    BiForm::new(poly_to_binary(f, n, Y0, Y1, 4)).expect("homogeneous by construction")
}

/// Form in `x` only, from a polynomial in `s = x0/x1` and a degree.
pub fn x_form(f: &FPoly, n: u32) -> BiForm {
    BiForm::new(poly_to_binary(f, n, X0, X1, 4)).expect("homogeneous by construction")
}

/// `Res_x(F, G)`, a form in `y` of degree `a_F b_G + b_F a_G`.
pub fn resultant_x(f: &BiForm, g: &BiForm) -> Result<BiForm> {
    if f.a == 0 && g.a == 0 {
        return Err(Error::DegenerateResultant);
    }
    let like = MPoly::one(4, &f.one_coeff());
    let r = resultant_desc(&f.x_coeffs(), &g.x_coeffs(), &like);
    if r.is_zero() {
        return Ok(BiForm { poly: r, a: 0, b: f.a * g.b + f.b * g.a });
    }
    BiForm::new(r)
}

/// `Res_y(F, G)`, a form in `x`.
pub fn resultant_y(f: &BiForm, g: &BiForm) -> Result<BiForm> {
    resultant_x(&f.transpose(), &g.transpose()).map(|r| r.transpose())
}

fn binary_gcd(polys: &[(FPoly, u32)]) -> (FPoly, u32) {
    // gcd of binary forms given as (dehomogenization, degree); the x1-power is the min of n - deg.
    let mut g: Option<FPoly> = None;
    let mut low = u32::MAX;
    for (p, n) in polys {
        if p.is_zero() {
            continue;
        }
        low = low.min(n - p.deg0() as u32);
        g = Some(match g {
            None => p.monic(),
            Some(h) => h.gcd(p),
        });
    }
    let g = g.expect("nonzero form");
    let deg = g.deg0() as u32 + if low == u32::MAX { 0 } else { low };
    (g, deg)
}

/// Factorization of a form into normalized irreducible forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormFactorization {
    pub unit: Fe,
    pub factors: BTreeMap<BiForm, u32>,
}

impl FormFactorization {
    pub fn expand(&self) -> BiForm {
        let mut acc = BiForm::constant(self.unit.clone());
        for (f, e) in &self.factors {
            acc = acc.mul(&f.pow(*e));
        }
        acc
    }
}

fn factor_binary(p: &FPoly, n: u32, in_y: bool, out: &mut BTreeMap<BiForm, u32>) -> Result<Fe> {
    let (v0, v1) = if in_y { (Y0, Y1) } else { (X0, X1) };
    let fa = factor(p)?;
    for (f, e) in &fa.factors {
        let form = BiForm::new(poly_to_binary(f, f.deg0() as u32, v0, v1, 4)).expect("homogeneous");
        let lc = form.leading_coeff();
        debug_assert!(lc.is_one());
        *out.entry(form).or_insert(0) += e;
    }
    let at_inf = n - p.deg0() as u32;
    if at_inf > 0 {
        let one = fa.unit.one_like();
        *out.entry(BiForm::var(v1, &one)).or_insert(0) += at_inf;
    }
    Ok(fa.unit)
}

/// Content of a form with respect to the `x` side (a binary form in `x`), or the `y` side.
fn content(f: &BiForm, x_side: bool) -> BiForm {
    // Coefficients of f as a polynomial in the other pair of variables.
    let parts = if x_side { f.y_coeffs() } else { f.x_coeffs() };
    let (v0, v1, n) = if x_side { (X0, X1, f.a) } else { (Y0, Y1, f.b) };
    let polys: Vec<(FPoly, u32)> = parts.iter().filter(|p| !p.is_zero()).map(|p| (binary_to_poly(p, v0, v1), n)).collect();
    let (g, deg) = binary_gcd(&polys);
    BiForm::new(poly_to_binary(&g, deg, v0, v1, 4)).expect("homogeneous")
}

/// Factor a form into normalized irreducibles.
pub fn factor_form(f: &BiForm) -> Result<FormFactorization> {
    let mut factors = BTreeMap::new();
    let field = f.field();
    let mut unit = f.one_coeff();
    let cx = content(f, true);
    let cy = content(f, false);
    let mut prim = f.div_exact(&cx).expect("content divides").div_exact(&cy).expect("content divides");
    if cx.a > 0 {
        let (p, n, y) = cx.as_binary().expect("binary");
        unit = unit.mul(&factor_binary(&p, n, y, &mut factors)?);
    } else {
        unit = unit.mul(&cx.leading_coeff());
    }
    if cy.b > 0 {
        let (p, n, y) = cy.as_binary().expect("binary");
        unit = unit.mul(&factor_binary(&p, n, y, &mut factors)?);
    } else {
        unit = unit.mul(&cy.leading_coeff());
    }
    // The primitive part has bidegree (a, b) with a, b both positive or both zero.
    let mut stack = vec![];
    if !prim.is_constant() {
        let lc = prim.leading_coeff();
        unit = unit.mul(&lc);
        prim = prim.normalized();
        stack.push(prim);
    } else {
        unit = unit.mul(&prim.leading_coeff());
    }
    while let Some(p) = stack.pop() {
        match split_primitive(&p, &field)? {
            None => *factors.entry(p).or_insert(0) += 1,
            Some((g, h)) => {
                stack.push(g);
                stack.push(h);
            }
        }
    }
    let out = FormFactorization { unit, factors };
    debug_assert_eq!(out.expand(), *f);
    Ok(out)
}

/// Find a proper normalized factor of a primitive normalized form, by trial division.
fn split_primitive(p: &BiForm, field: &BaseField) -> Result<Option<(BiForm, BiForm)>> {
    let (a, b) = p.bidegree();
    if a <= 1 || b <= 1 {
        return Ok(None);
    }
    let q = field
        .size()
        .ok_or_else(|| Error::Unsupported("factoring bihomogeneous forms over QQ".into()))?;
    for i in 1..=a / 2 {
        for j in 1..b {
            let n = (i + 1) * (j + 1);
            let total = q.checked_pow(n).filter(|&t| t <= TRIAL_LIMIT).ok_or_else(|| {
                Error::Unsupported(format!("trial division for forms of bidegree ({a}, {b}) over GF({q})"))
            })?;
            let monos: Vec<(u32, u32)> = (0..=i).flat_map(|x| (0..=j).map(move |y| (x, y))).collect();
            for idx in 1..total {
                let mut coeffs = Vec::with_capacity(monos.len());
                let mut v = idx;
                for _ in 0..monos.len() {
                    coeffs.push(v % q);
                    v /= q;
                }
                // Normalized candidates only: the lexicographically leading coefficient is 1.
                let lead = coeffs.iter().rposition(|&c| c != 0).expect("nonzero index");
                if coeffs[lead] != 1 {
                    continue;
                }
                let one = field.one();
                let poly = MPoly::from_terms(
                    4,
                    &one,
                    monos
                        .iter()
                        .zip(&coeffs)
                        .map(|(&(x, y), &c)| (vec![x as u16, (i - x) as u16, y as u16, (j - y) as u16], field.elem(c))),
                );
                let cand = BiForm { poly, a: i, b: j };
                if !cand.is_normalized() {
                    continue;
                }
                if let Some(rest) = p.div_exact(&cand) {
                    return Ok(Some((cand, rest.normalized())));
                }
            }
        }
    }
    Ok(None)
}
