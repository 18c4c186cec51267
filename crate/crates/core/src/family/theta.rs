//! The theta route and the norm route from a pair of relative divisors to a line bundle on the base.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::cech::FamilyBase;
use super::forms::{y_divisor, y_poly, FamilyDivisor};
use crate::algebra::bihom::{resultant_x, x_form, BiForm, X1, Y0, Y1};
use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::residue::Residue;
use crate::algebra::{BaseField, FPoly, Field, Ring};
use crate::curve::{ClosedPoint, Divisor, FactoredFunction};
use crate::{Error, Result};

/// Cover of the base by `{l_alpha != 0}` for linear forms `l_alpha` in `y`; over `A1` infinity is never included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseCover {
    base: FamilyBase,
    ells: Vec<BiForm>,
}

impl BaseCover {
    pub fn new(base: FamilyBase, ells: Vec<BiForm>) -> Result<Self> {
        if ells.is_empty() {
            return Err(Error::InvalidCover("empty cover".into()));
        }
        let mut zeros = BTreeSet::new();
        for l in &ells {
            if l.bidegree() != (0, 1) {
                return Err(Error::InvalidCover(format!("{} is not a linear form in y", l.render())));
            }
            zeros.insert(y_divisor(l)?.support().remove(0));
        }
        let covers = zeros.len() > 1 || (base == FamilyBase::A1 && zeros.contains(&ClosedPoint::Infinity));
        if !covers {
            return Err(Error::InvalidCover("the charts miss a point of the base".into()));
        }
        let ells = ells.into_iter().map(|l| l.normalized()).collect();
        Ok(BaseCover { base, ells })
    }

    /// `{y1 != 0, y0 != 0}` over `P1`, `{y1 != 0}` over `A1`.
    pub fn standard(field: &BaseField, base: FamilyBase) -> Self {
        let one = field.one();
        let ells = match base {
            FamilyBase::P1 => vec![BiForm::var(Y1, &one), BiForm::var(Y0, &one)],
            FamilyBase::A1 => vec![BiForm::var(Y1, &one)],
        };
        Self::new(base, ells).expect("standard cover")
    }

    pub fn base(&self) -> FamilyBase {
        self.base
    }

    pub fn ells(&self) -> &[BiForm] {
        &self.ells
    }

    pub fn excluded(&self, alpha: usize) -> BTreeSet<ClosedPoint> {
        let mut s: BTreeSet<ClosedPoint> = y_divisor(&self.ells[alpha]).expect("form in y").support().into_iter().collect();
        if self.base == FamilyBase::A1 {
            s.insert(ClosedPoint::Infinity);
        }
        s
    }

    /// Restriction of a divisor on `P1` to the base.
    pub fn restrict(&self, d: &Divisor) -> Divisor {
        match self.base {
            FamilyBase::P1 => d.clone(),
            FamilyBase::A1 => Divisor::from_terms(d.terms().iter().filter(|(p, _)| !p.is_infinity()).map(|(p, n)| (p.clone(), *n))),
        }
    }
}

/// A chart of the refined cover: `V_alpha` minus the points over which `lambda` vanishes somewhere on `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaChart {
    pub alpha: usize,
    pub lambda: BiForm,
    pub excluded: BTreeSet<ClosedPoint>,
}

impl ThetaChart {
    pub fn contains(&self, p: &ClosedPoint) -> bool {
        !self.excluded.contains(p)
    }

    pub fn label(&self) -> alloc::string::String {
        format!("V{}[{} != 0]", self.alpha, self.lambda.render())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PicClass {
    Degree(i64),
    Trivial,
}

impl fmt::Display for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PicClass::Degree(d) => write!(f, "O({d})"),
            PicClass::Trivial => f.write_str("O"),
        }
    }
}

fn class_of(d: &Divisor, base: FamilyBase) -> PicClass {
    match base {
        FamilyBase::P1 => PicClass::Degree(d.degree()),
        FamilyBase::A1 => PicClass::Trivial,
    }
}

fn ratpoly(p: &Poly<FPoly>, field: &BaseField) -> Poly<RatFunc> {
    let zero = RatFunc::constant(field.zero());
    p.map(&zero, |c| RatFunc::from_poly(c.clone()))
}

/// `k(D_k) = F(u)[s] / (f_k)`; the chart `x1 = 1` is used unless `D_k` is `{x1 = 0}`.
#[derive(Clone, Debug)]
struct Component {
    form: BiForm,
    mult: i64,
    swap: bool,
    modulus: Arc<Poly<RatFunc>>,
}

impl Component {
    fn new(form: &BiForm, mult: i64, field: &BaseField) -> Self {
        let swap = *form == BiForm::var(X1, &field.one());
        let f = ratpoly(&form.dehomogenize_chart(swap), field);
        debug_assert_eq!(f.deg0() as u32, form.bidegree().0);
        Component { form: form.clone(), mult, swap, modulus: Arc::new(f.monic()) }
    }

    fn element(&self, h: &BiForm, field: &BaseField) -> Residue<RatFunc> {
        Residue::new(&ratpoly(&h.dehomogenize_chart(self.swap), field), &self.modulus)
    }
}

fn check_pair(d: &FamilyDivisor, e: &FamilyDivisor) -> Result<()> {
    if d.field() != e.field() {
        return Err(Error::FieldMismatch);
    }
    if let Some(g) = d.components().keys().find(|g| g.bidegree().0 == 0) {
        return Err(Error::NotFiniteOverBase(g.render()));
    }
    if let Some(g) = d.shares_component(e) {
        return Err(Error::CommonComponent(g.render()));
    }
    Ok(())
}

fn lambda_candidates(field: &BaseField) -> Vec<BiForm> {
    let mut out = vec![BiForm::var(X1, &field.one())];
    let ks: Vec<_> = if field.is_finite() { field.elements() } else { (0..16).map(|i| field.from_i64(i)).collect() };
    for k in ks {
        // x0 - k x1
        out.push(x_form(&FPoly::linear(&k), 1));
    }
    out
}

/// `F` restricted to `lambda = 0`, a form in `y` (zero when `lambda` divides `F`).
fn restrict_to_zero(f: &BiForm, lam: &BiForm) -> BiForm {
    let cs = f.x_coeffs();
    let (a, b) = f.bidegree();
    let zero = f.poly().zero_coeff().clone();
    let lp = crate::algebra::bihom::binary_to_poly(lam.poly(), crate::algebra::bihom::X0, X1);
    let mut acc = crate::algebra::mpoly::MPoly::zero(4, &zero);
    if lp.deg0() == 0 {
        // lambda = x1: keep the x0^a coefficient.
        acc = cs[0].clone();
    } else {
        let k = lp.coeff(0).neg();
        let mut pw = zero.one_like();
        for i in (0..=a as usize).rev() {
            acc = acc.add(&cs[i].scale(&pw));
            pw = pw.mul(&k);
        }
    }
    if acc.is_zero() {
        BiForm::constant(zero).mul(&crate::algebra::bihom::y_form(&FPoly::one(&f.one_coeff()), b))
    } else {
        BiForm::new(acc).expect("form in y")
    }
}

fn refine(d: &FamilyDivisor, cover: &BaseCover) -> Result<Vec<ThetaChart>> {
    let field = d.field();
    let mut f = BiForm::constant(field.one());
    for g in d.components().keys() {
        f = f.mul(g);
    }
    let cands = lambda_candidates(field);
    let mut zero_sets: Vec<Option<Option<BTreeSet<ClosedPoint>>>> = vec![None; cands.len()];
    let mut charts = Vec::new();
    for alpha in 0..cover.ells.len() {
        let ex = cover.excluded(alpha);
        let mut common: Option<BTreeSet<ClosedPoint>> = None;
        for (li, lam) in cands.iter().enumerate() {
            if common.as_ref().is_some_and(|c| c.is_empty()) {
                break;
            }
            if zero_sets[li].is_none() {
                let r = restrict_to_zero(&f, lam);
                let z = if r.poly().is_zero() { None } else { Some(y_divisor(&r)?.support().into_iter().collect()) };
                zero_sets[li] = Some(z);
            }
            let Some(Some(all)) = &zero_sets[li] else { continue };
            let zeros: BTreeSet<ClosedPoint> = all.iter().filter(|p| !ex.contains(*p)).cloned().collect();
            let next = match &common {
                None => zeros.clone(),
                Some(c) => c.intersection(&zeros).cloned().collect(),
            };
            if common.as_ref() == Some(&next) {
                continue;
            }
            let mut excluded = ex.clone();
            excluded.extend(zeros);
            charts.push(ThetaChart { alpha, lambda: lam.clone(), excluded });
            common = Some(next);
        }
        if !common.is_some_and(|c| c.is_empty()) {
            return Err(Error::Unsupported(format!(
                "no cover of V{alpha} by linear forms in x; the fiber degree of D exceeds the field size"
            )));
        }
    }
    Ok(charts)
}

/// The functions `h_A = g_A|D` with `g_A = G / (lambda_A^c l_alpha^d)` on each component of `D`.
#[derive(Clone, Debug)]
pub struct ThetaCocycle {
    cover: BaseCover,
    charts: Vec<ThetaChart>,
    components: Vec<Component>,
    e: Vec<(BiForm, i64)>,
    c: i64,
    d: i64,
}

pub fn theta_cocycle(d: &FamilyDivisor, e: &FamilyDivisor, cover: &BaseCover) -> Result<ThetaCocycle> {
    check_pair(d, e)?;
    let field = d.field();
    let charts = refine(d, cover)?;
    let components: Vec<Component> = d.components().iter().map(|(g, m)| Component::new(g, *m, field)).collect();
    let (c, dd) = e.bidegree();
    let e = e.components().iter().map(|(g, n)| (g.clone(), *n)).collect();
    Ok(ThetaCocycle { cover: cover.clone(), charts, components, e, c, d: dd })
}

impl ThetaCocycle {
    pub fn charts(&self) -> &[ThetaChart] {
        &self.charts
    }

    pub fn cover(&self) -> &BaseCover {
        &self.cover
    }

    fn field(&self) -> BaseField {
        self.cover.ells[0].field()
    }

    /// Components of `D` with multiplicities, in the order used by `h` and `r`.
    pub fn components(&self) -> Vec<(BiForm, i64)> {
        self.components.iter().map(|c| (c.form.clone(), c.mult)).collect()
    }

    /// `h_A` on each component, as an element of `F(u)[s]/(f_k)`.
    pub fn h(&self, a: usize) -> Vec<Residue<RatFunc>> {
        let field = self.field();
        let chart = &self.charts[a];
        let ell = &self.cover.ells[chart.alpha];
        self.components
            .iter()
            .map(|comp| {
                let mut acc = comp.element(&BiForm::constant(field.one()), &field);
                for (g, n) in &self.e {
                    acc = acc.mul(&comp.element(g, &field).pow_i(*n).expect("no common component"));
                }
                acc = acc.mul(&comp.element(&chart.lambda, &field).pow_i(-self.c).expect("lambda is a unit on D"));
                acc.mul(&comp.element(ell, &field).pow_i(-self.d).expect("nonzero"))
            })
            .collect()
    }

    /// `r_AA' = h_A / h_A'` on each component.
    pub fn r(&self, a: usize, b: usize) -> Vec<Residue<RatFunc>> {
        self.h(a).iter().zip(&self.h(b)).map(|(x, y)| x.div(y).expect("units")).collect()
    }

    pub fn is_cocycle(&self) -> bool {
        let n = self.charts.len();
        let r: Vec<Vec<Vec<Residue<RatFunc>>>> = (0..n).map(|a| (0..n).map(|b| self.r(a, b)).collect()).collect();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let lhs: Vec<_> = r[a][b].iter().zip(&r[b][c]).map(|(x, y)| x.mul(y)).collect();
                    lhs == r[a][c]
                })
            })
        })
    }

    pub fn is_trivial(&self) -> bool {
        let n = self.charts.len();
        (0..n).all(|a| (0..n).all(|b| self.r(a, b).iter().all(|x| x.is_one())))
    }

    /// `prod_k N(v_k)^{m_k}` for a vector indexed by components.
    pub fn norm_of(&self, v: &[Residue<RatFunc>]) -> Result<FactoredFunction> {
        let field = self.field();
        let mut acc = RatFunc::constant(field.one());
        for (x, comp) in v.iter().zip(&self.components) {
            acc = acc.mul(&x.norm()?.pow_i(comp.mult).expect("unit"));
        }
        FactoredFunction::from_ratfunc(&acc)
    }

    /// `N(h_A)` on every chart, assembled from the norms of the factors of `h_A`.
    fn local_norms(&self) -> Result<Vec<FactoredFunction>> {
        let field = self.field();
        let norm = |comp: &Component, g: &BiForm| -> Result<FactoredFunction> {
            FactoredFunction::from_ratfunc(&comp.element(g, &field).norm()?)
        };
        let mut per_comp = Vec::with_capacity(self.components.len());
        for comp in &self.components {
            let mut base = FactoredFunction::one(&field);
            for (g, n) in &self.e {
                base = base.mul(&norm(comp, g)?.pow(*n));
            }
            per_comp.push(base);
        }
        let mut lam_norms: BTreeMap<(usize, BiForm), FactoredFunction> = BTreeMap::new();
        let mut out = Vec::with_capacity(self.charts.len());
        for chart in &self.charts {
            let ell = &self.cover.ells[chart.alpha];
            let mut acc = FactoredFunction::one(&field);
            for (k, comp) in self.components.iter().enumerate() {
                let key = (k, chart.lambda.clone());
                if !lam_norms.contains_key(&key) {
                    lam_norms.insert(key.clone(), norm(comp, &chart.lambda)?);
                }
                let nl = &lam_norms[&key];
                let nell = norm(comp, ell)?;
                let v = per_comp[k].mul(&nl.pow(-self.c)).mul(&nell.pow(-self.d));
                acc = acc.mul(&v.pow(comp.mult));
            }
            out.push(acc);
        }
        Ok(out)
    }
}

fn is_unit_on(f: &FactoredFunction, excluded: &BTreeSet<ClosedPoint>) -> bool {
    f.divisor().terms().keys().all(|p| excluded.contains(p))
}

/// Glue local divisors `div(c_{A,0})|V_A` into a divisor on the base.
fn glue(charts: &[ThetaChart], c0: &[FactoredFunction], cover: &BaseCover) -> Divisor {
    let mut pts: BTreeSet<ClosedPoint> = BTreeSet::new();
    for c in c0 {
        pts.extend(c.divisor().support());
    }
    let mut out = Divisor::zero();
    for p in pts {
        if cover.base == FamilyBase::A1 && p.is_infinity() {
            continue;
        }
        let a = charts.iter().position(|ch| ch.contains(&p)).expect("charts cover the base");
        out.add_point(p.clone(), c0[a].valuation(&p));
    }
    out
}

/// A line bundle on the base as a unit cocycle on the refined cover, its divisor and class.
#[derive(Clone, Debug)]
pub struct Pushforward {
    pub local: Vec<FactoredFunction>,
    pub cocycle: BTreeMap<(usize, usize), FactoredFunction>,
    pub divisor: Divisor,
    pub class: PicClass,
}

/// Norms of the theta data down to the base: `c_AA' = prod_k N(r_AA')^{m_k}`.
pub fn norm_pushforward(r: &ThetaCocycle) -> Result<Pushforward> {
    let local = r.local_norms()?;
    let n = local.len();
    let mut cocycle = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            // Norms are multiplicative, so N(r_AB) = N(h_A) / N(h_B).
            let c = local[a].div(&local[b]);
            let mut ex = r.charts[a].excluded.clone();
            ex.extend(r.charts[b].excluded.iter().cloned());
            if !is_unit_on(&c, &ex) {
                return Err(Error::Mismatch(format!("c_{a}{b} = {c} is not a unit on the overlap")));
            }
            cocycle.insert((a, b), c);
        }
    }
    let c0: Vec<FactoredFunction> = (0..n).map(|a| cocycle[&(a, 0)].clone()).collect();
    let divisor = glue(&r.charts, &c0, &r.cover);
    let class = class_of(&divisor, r.cover.base);
    Ok(Pushforward { local, cocycle, divisor, class })
}

/// The norm route: `R = prod Res_x(F_k, G_j)^{m_k n_j}`, with `e_alpha = R / l_alpha^deg R` on each base chart.
#[derive(Clone, Debug)]
pub struct NormRoute {
    pub local: Vec<FactoredFunction>,
    pub cocycle: BTreeMap<(usize, usize), FactoredFunction>,
    pub divisor: Divisor,
    pub class: PicClass,
}

pub fn deligne_norm_family(d: &FamilyDivisor, e: &FamilyDivisor, cover: &BaseCover) -> Result<NormRoute> {
    check_pair(d, e)?;
    let field = d.field();
    let ells: Vec<FactoredFunction> =
        cover.ells.iter().map(|l| FactoredFunction::from_poly(&y_poly(l))).collect::<Result<_>>()?;
    let mut local = vec![FactoredFunction::one(field); cover.ells.len()];
    let mut divisor = Divisor::zero();
    for (f, m) in d.components() {
        for (g, n) in e.components() {
            let r = resultant_x(f, g)?;
            if r.poly().is_zero() {
                return Err(Error::CommonComponent(format!("{} and {}", f.render(), g.render())));
            }
            let k = m * n;
            divisor = divisor.add(&y_divisor(&r)?.scale(k));
            let rf = FactoredFunction::from_poly(&y_poly(&r))?;
            let deg = r.bidegree().1 as i64;
            for (a, l) in ells.iter().enumerate() {
                local[a] = local[a].mul(&rf.div(&l.pow(deg)).pow(k));
            }
        }
    }
    let divisor = cover.restrict(&divisor);
    let n = local.len();
    let mut cocycle = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            cocycle.insert((a, b), local[a].div(&local[b]));
        }
    }
    let class = class_of(&divisor, cover.base);
    Ok(NormRoute { local, cocycle, divisor, class })
}

/// Both routes, the coboundary `phi_A = e^theta_A / e^N_alpha` between them, and the verdict.
#[derive(Clone, Debug)]
pub struct RouteComparison {
    pub theta: ThetaCocycle,
    pub pushforward: Pushforward,
    pub norm: NormRoute,
    pub coboundary: Vec<FactoredFunction>,
    pub coboundary_units: bool,
    pub divisors_match: bool,
    pub agree: bool,
}

pub fn compare_routes(d: &FamilyDivisor, e: &FamilyDivisor, cover: &BaseCover) -> Result<RouteComparison> {
    let theta = theta_cocycle(d, e, cover)?;
    let pushforward = norm_pushforward(&theta)?;
    let norm = deligne_norm_family(d, e, cover)?;
    let coboundary: Vec<FactoredFunction> = theta
        .charts
        .iter()
        .zip(&pushforward.local)
        .map(|(ch, et)| et.div(&norm.local[ch.alpha]))
        .collect();
    let coboundary_units = theta.charts.iter().zip(&coboundary).all(|(ch, phi)| is_unit_on(phi, &ch.excluded));
    // Off the excluded points of each chart the glued theta divisor differs from div R by div(e^theta_0).
    let shifted = pushforward.divisor.add(&cover.restrict(&pushforward.local[0].divisor()));
    let divisors_match = shifted == norm.divisor;
    let agree = coboundary_units && divisors_match && pushforward.class == norm.class;
    Ok(RouteComparison { theta, pushforward, norm, coboundary, coboundary_units, divisors_match, agree })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(k: &BaseField, a: u32, b: u32, c: &[(u32, u32, i64)]) -> FamilyDivisor {
        FamilyDivisor::from_form(&BiForm::from_coeffs(k, a, b, c).unwrap()).unwrap()
    }

    #[test]
    fn diagonal_vs_shift() {
        let k = BaseField::gf_q(5).unwrap();
        let diag = form(&k, 1, 1, &[(1, 0, 1), (0, 1, -1)]);
        // x = y + 1: x0 y1 - x1 y0 - x1 y1
        let shift = form(&k, 1, 1, &[(1, 0, 1), (0, 1, -1), (0, 0, -1)]);
        let cover = BaseCover::standard(&k, FamilyBase::P1);
        let cmp = compare_routes(&diag, &shift, &cover).unwrap();
        assert!(cmp.agree, "{cmp:?}");
        assert_eq!(cmp.norm.class, PicClass::Degree(2));
        assert!(matches!(theta_cocycle(&diag, &diag, &cover), Err(Error::CommonComponent(_))));
    }

    #[test]
    fn trivial_e() {
        let k = BaseField::gf_q(3).unwrap();
        let diag = form(&k, 1, 1, &[(1, 0, 1), (0, 1, -1)]);
        let cover = BaseCover::standard(&k, FamilyBase::P1);
        let zero = FamilyDivisor::zero(&k);
        let t = theta_cocycle(&diag, &zero, &cover).unwrap();
        assert!(t.is_trivial());
        let cmp = compare_routes(&diag, &zero, &cover).unwrap();
        assert!(cmp.agree);
        assert_eq!(cmp.norm.class, PicClass::Degree(0));
    }

    #[test]
    fn vertical_rejected() {
        let k = BaseField::gf_q(3).unwrap();
        let fiber = form(&k, 0, 1, &[(0, 1, 1)]);
        let diag = form(&k, 1, 1, &[(1, 0, 1), (0, 1, -1)]);
        let cover = BaseCover::standard(&k, FamilyBase::P1);
        assert!(matches!(theta_cocycle(&fiber, &diag, &cover), Err(Error::NotFiniteOverBase(_))));
        // A vertical E is allowed.
        let cmp = compare_routes(&diag, &fiber, &cover).unwrap();
        assert!(cmp.agree);
        assert_eq!(cmp.norm.class, PicClass::Degree(1));
    }

    #[test]
    fn affine_base_and_pure_x() {
        let k = BaseField::gf_q(3).unwrap();
        let x1 = form(&k, 1, 0, &[(0, 0, 1)]);
        let conic = form(&k, 2, 1, &[(2, 1, 1), (0, 0, 1), (1, 0, 1)]);
        for base in [FamilyBase::P1, FamilyBase::A1] {
            let cover = BaseCover::standard(&k, base);
            let cmp = compare_routes(&x1, &conic, &cover).unwrap();
            assert!(cmp.agree, "{cmp:?}");
            let cmp = compare_routes(&conic, &x1, &cover).unwrap();
            assert!(cmp.agree, "{cmp:?}");
        }
    }

    #[test]
    fn cocycle_norms_match_r() {
        let k = BaseField::gf_q(3).unwrap();
        let d = form(&k, 2, 1, &[(2, 1, 1), (0, 0, 1), (1, 0, 1)]);
        let e = form(&k, 1, 1, &[(1, 1, 1), (0, 0, 1)]);
        let cover = BaseCover::standard(&k, FamilyBase::P1);
        let t = theta_cocycle(&d, &e, &cover).unwrap();
        assert!(t.is_cocycle());
        let p = norm_pushforward(&t).unwrap();
        for a in 0..t.charts().len() {
            assert_eq!(t.norm_of(&t.h(a)).unwrap(), p.local[a]);
            for b in 0..t.charts().len() {
                assert_eq!(t.norm_of(&t.r(a, b)).unwrap(), p.cocycle[&(a, b)]);
            }
        }
    }
}
