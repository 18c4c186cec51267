//! Correspondences on `P1 x P1`: divisors acting through `m -> (pi_C)_*(pi_D^* m . alpha)`.
//! The first factor `C` carries `x`, the second `D` carries `y`.

use alloc::format;
use alloc::string::String;

use crate::algebra::bihom::{factor_form, poly_to_binary, resultant_y, BiForm, X0, X1, Y0, Y1};
use crate::algebra::mpoly::MPoly;
use crate::algebra::resultant::resultant_desc;
use crate::algebra::{BaseField, FPoly, Ring};
use crate::curve::{ClosedPoint, Divisor};
use crate::family::forms::y_divisor;
use crate::family::{compare_routes, BaseCover, FamilyBase, FamilyDivisor, PicClass};
use crate::{Error, Result};

/// A formal combination of irreducible curves on `C x D`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Correspondence {
    div: FamilyDivisor,
}

/// The form cutting out a closed point, in `x` (on `C`) or in `y` (on `D`).
pub fn point_form(p: &ClosedPoint, field: &BaseField, in_y: bool) -> BiForm {
    let (v0, v1) = if in_y { (Y0, Y1) } else { (X0, X1) };
    match p {
        ClosedPoint::Infinity => BiForm::var(v1, &field.one()),
        ClosedPoint::Finite(pi) => BiForm::new(poly_to_binary(pi, pi.deg0() as u32, v0, v1, 4)).expect("binary form"),
    }
}

/// The divisor on `C` cut out by a form in `x`.
pub fn x_divisor(r: &BiForm) -> Result<Divisor> {
    y_divisor(&r.transpose())
}

impl Correspondence {
    pub fn from_divisor(div: FamilyDivisor) -> Self {
        Correspondence { div }
    }

    pub fn from_form(f: &BiForm) -> Result<Self> {
        Ok(Correspondence { div: FamilyDivisor::from_form(f)? })
    }

    pub fn zero(field: &BaseField) -> Self {
        Correspondence { div: FamilyDivisor::zero(field) }
    }

    /// `x0 y1 - x1 y0`.
    pub fn diagonal(field: &BaseField) -> Self {
        Self::from_form(&BiForm::from_coeffs(field, 1, 1, &[(1, 0, 1), (0, 1, -1)]).expect("form")).expect("irreducible")
    }

    /// Graph of `y -> p(y)/q(y)`: `x0 q^h(y) - x1 p^h(y)`.
    pub fn graph(p: &FPoly, q: &FPoly) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroInput);
        }
        let g = p.gcd(q);
        let (p, q) = (p.div_exact(&g).expect("gcd"), q.div_exact(&g).expect("gcd"));
        let n = p.deg0().max(q.deg0()) as u32;
        let one = q.lead().one_like();
        let x0 = MPoly::var(4, X0, &one);
        let x1 = MPoly::var(4, X1, &one);
        let poly = x0.mul(&poly_to_binary(&q, n, Y0, Y1, 4)).sub(&x1.mul(&poly_to_binary(&p, n, Y0, Y1, 4)));
        Self::from_form(&BiForm::new(poly)?)
    }

    pub fn graph_poly(p: &FPoly) -> Result<Self> {
        Self::graph(p, &FPoly::one(&p.lead()))
    }

    /// `pi_D^*(d) = C x {d}`.
    pub fn vertical(d: &ClosedPoint, field: &BaseField) -> Self {
        Self::from_form(&point_form(d, field, true)).expect("irreducible")
    }

    /// `pi_C^*(c) = {c} x D`.
    pub fn horizontal(c: &ClosedPoint, field: &BaseField) -> Self {
        Self::from_form(&point_form(c, field, false)).expect("irreducible")
    }

    pub fn divisor(&self) -> &FamilyDivisor {
        &self.div
    }

    pub fn field(&self) -> &BaseField {
        self.div.field()
    }

    /// Swap the two factors.
    pub fn transpose(&self) -> Self {
        let comps = self.div.components().iter().map(|(g, e)| (g.transpose(), *e));
        Correspondence { div: FamilyDivisor::from_components(self.field(), comps).expect("transposes stay irreducible") }
    }

    pub fn add(&self, o: &Self) -> Self {
        Correspondence { div: self.div.add(&o.div) }
    }

    pub fn scale(&self, k: i64) -> Self {
        Correspondence { div: self.div.scale(k) }
    }

    /// Degree of the projection to `D`, i.e. the total `x`-degree.
    pub fn fiber_degree(&self) -> i64 {
        self.div.bidegree().0
    }

    /// Every component is a fiber of one of the projections.
    pub fn is_degenerate(&self) -> bool {
        self.div.components().keys().all(|g| {
            let (a, b) = g.bidegree();
            a == 0 || b == 0
        })
    }

    pub fn render(&self) -> String {
        self.div.render()
    }
}

/// `(pi_C)_*(pi_D^* m . alpha)`.
pub fn act(alpha: &Correspondence, m: &Divisor) -> Result<Divisor> {
    let field = alpha.field();
    let mut out = Divisor::zero();
    for (b, nb) in m.terms() {
        let pb = point_form(b, field, true);
        for (f, e) in alpha.div.components() {
            let r = resultant_y(f, &pb)?;
            if r.poly().is_zero() {
                return Err(Error::NonProper(format!("{b}")));
            }
            out = out.add(&x_divisor(&r)?.scale(nb * e));
        }
    }
    Ok(out)
}

/// `g o h` for `h` on `C2 x C3` and `g` on `C1 x C2`, by eliminating the middle coordinate.
pub fn compose(g: &Correspondence, h: &Correspondence) -> Result<Correspondence> {
    let field = g.field();
    if field != h.field() {
        return Err(Error::FieldMismatch);
    }
    let mut out = FamilyDivisor::zero(field);
    let like = MPoly::one(4, &field.one());
    for (gf, ge) in g.div.components() {
        for (hf, he) in h.div.components() {
            // gf is a binary form in the middle variable y; hf in its x slot, with coefficients in z.
            if gf.bidegree().1 == 0 && hf.bidegree().0 == 0 {
                return Err(Error::ImproperComposition);
            }
            let r = resultant_desc(&gf.y_coeffs(), &hf.x_coeffs(), &like);
            if r.is_zero() {
                return Err(Error::ImproperComposition);
            }
            let r = BiForm::new(r)?;
            for (c, k) in factor_form(&r)?.factors {
                out = out.add(&FamilyDivisor::from_components(field, [(c, ge * he * k as i64)])?);
            }
        }
    }
    Ok(Correspondence { div: out })
}

/// `T(alpha)` on `Pic(P1) = Z`: multiplication by the fiber degree.
pub fn induced_degree_map(alpha: &Correspondence) -> i64 {
    alpha.fiber_degree()
}

/// The action computed through the Deligne pairing on the family `D x C -> C`.
#[derive(Clone, Debug)]
pub struct DeligneAction {
    pub divisor: Divisor,
    pub class: PicClass,
    pub theta_divisor: Divisor,
    pub routes_agree: bool,
}

/// `alpha^* M` as `<pi_D^* m, alpha>` pushed to `C`, by both the theta and the norm route.
pub fn act_via_deligne(alpha: &Correspondence, m: &Divisor) -> Result<DeligneAction> {
    let field = alpha.field();
    // Over the base C the fiber coordinate is D's, so transpose: forms in x now live on D.
    let fam_m = FamilyDivisor::from_components(field, m.terms().iter().map(|(b, n)| (point_form(b, field, false), *n)))?;
    let e = alpha.transpose();
    if let Some(g) = fam_m.shares_component(e.divisor()) {
        return Err(Error::NonProper(g.render()));
    }
    let cover = BaseCover::standard(field, FamilyBase::P1);
    let cmp = compare_routes(&fam_m, e.divisor(), &cover)?;
    Ok(DeligneAction {
        divisor: cmp.norm.divisor.clone(),
        class: cmp.norm.class.clone(),
        theta_divisor: cmp.pushforward.divisor.clone(),
        routes_agree: cmp.agree,
    })
}
