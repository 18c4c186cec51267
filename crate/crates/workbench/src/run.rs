//! One function per subcommand; each parses its text inputs and returns a report.

use deligne_core::algebra::snf::IntMatrix;
use deligne_core::algebra::{BaseField, Ring};
use deligne_core::corr::{act, act_via_deligne, compose, Correspondence};
use deligne_core::family::{
    cocycle_of_divisor, compare_routes, cup_cocycle, lambda_boundary, theta_cocycle, BaseCover, FamilyBase,
    FamilyDivisor, PicClass, XCover,
};
use deligne_core::picard::{
    biadditivity_witness, coker_functor, heisenberg as heisenberg_group, random_chain_map, ChainMap, FGAbelianGroup,
    GroupHom, TwoTermComplex,
};
use deligne_core::symbols::tame::{render_residue, weil_contributions};
use deligne_core::symbols::{deligne_scalar, weil_product};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::parse::{parse_divisor, parse_family, parse_function};
use crate::report::{Check, Report, WbError, WbResult};

pub fn weil(f: &str, g: &str, over: Option<&BaseField>) -> WbResult<Report> {
    let f = parse_function(f, over)?;
    let k = f.field();
    let g = parse_function(g, Some(&k))?;
    let prod = weil_product(&f, &g);
    let contributions: Vec<Value> = weil_contributions(&f, &g)
        .into_iter()
        .map(|(p, tame, norm)| json!({"point": p.to_string(), "tame": render_residue(&tame), "norm": norm.to_string()}))
        .collect();
    let mut r = Report::new("weil").field(k.name());
    r.put("f", f.render());
    r.put("g", g.render());
    r.put("contributions", contributions);
    r.put("product", prod.to_string());
    r.check(Check::new("product of local symbols is 1", prod.is_one()));
    Ok(r)
}

pub fn pair(f: &str, g: &str, over: Option<&BaseField>) -> WbResult<Report> {
    let f = parse_function(f, over)?;
    let k = f.field();
    let g = parse_function(g, Some(&k))?;
    let fg = deligne_scalar(&f, &g)?;
    let gf = deligne_scalar(&g, &f)?;
    let mut r = Report::new("pair").field(k.name());
    r.put("f", f.render());
    r.put("g", g.render());
    r.put("div_f", f.divisor().render());
    r.put("div_g", g.divisor().render());
    r.put("pairing", fg.to_string());
    r.put("swapped", gf.to_string());
    r.check(Check::new("<f,g> = <g,f>", fg == gf));
    Ok(r)
}

pub fn theta_compare(d: &str, e: &str, base: FamilyBase, over: Option<&BaseField>) -> WbResult<Report> {
    let d = parse_family(d, over)?;
    let k = d.field().clone();
    let e = parse_family(e, Some(&k))?;
    let cover = BaseCover::standard(&k, base);
    let cmp = compare_routes(&d, &e, &cover)?;
    let theta = theta_cocycle(&d, &e, &cover)?;
    let ((a, b), (c, dd)) = (d.bidegree(), e.bidegree());
    let expected = match base {
        FamilyBase::P1 => PicClass::Degree(a * dd + b * c),
        FamilyBase::A1 => PicClass::Trivial,
    };
    let mut r = Report::new("theta-compare").field(k.name());
    r.put("d", d.render());
    r.put("e", e.render());
    r.put("bidegree_d", vec![a, b]);
    r.put("bidegree_e", vec![c, dd]);
    r.put("base", format!("{base:?}"));
    r.put("charts", theta.charts().len());
    r.put("theta_divisor", cmp.pushforward.divisor.render());
    r.put("norm_divisor", cmp.norm.divisor.render());
    r.put("coboundary", cmp.coboundary.iter().map(|c| c.render()).collect::<Vec<_>>());
    r.put("class", cmp.norm.class.to_string());
    r.check(Check::new("theta and norm routes agree", cmp.agree));
    r.check(Check::new("theta data is a cocycle", theta.is_cocycle()));
    r.check(Check::new("class from bidegrees", cmp.norm.class == expected).with(expected.to_string()));
    if d.shares_component(&e).is_none() {
        r.check(top_triangle(&d, &e, base)?);
    }
    Ok(r)
}

fn top_triangle(d: &FamilyDivisor, e: &FamilyDivisor, base: FamilyBase) -> WbResult<Check> {
    let xc = XCover::standard(d.field(), base);
    let a = cocycle_of_divisor(d, &xc)?;
    let b = cocycle_of_divisor(e, &xc)?;
    let total = lambda_boundary(d, &b)?.add(&cup_cocycle(&a, &b)?);
    Ok(Check::new("lambda boundary plus cup product vanishes", total.is_zero()))
}

pub fn corr_act(alpha: &str, m: &str, via_deligne: bool, over: Option<&BaseField>) -> WbResult<Report> {
    let alpha = Correspondence::from_divisor(parse_family(alpha, over)?);
    let k = alpha.field().clone();
    let m = parse_divisor(m, Some(&k))?;
    let image = act(&alpha, &m)?;
    let mut r = Report::new("corr act").field(k.name());
    r.put("alpha", alpha.render());
    r.put("m", m.render());
    r.put("image", image.render());
    r.put("degree", image.degree());
    r.put("fiber_degree", alpha.fiber_degree());
    r.put("degenerate", alpha.is_degenerate());
    if via_deligne {
        let via = act_via_deligne(&alpha, &m)?;
        r.put("deligne_divisor", via.divisor.render());
        r.put("deligne_class", via.class.to_string());
        r.check(Check::new("Deligne route gives the same divisor", via.divisor == image));
        r.check(Check::new("theta and norm routes agree", via.routes_agree));
    }
    Ok(r)
}

pub fn corr_compose(g: &str, h: &str, m: Option<&str>, over: Option<&BaseField>) -> WbResult<Report> {
    let g = Correspondence::from_divisor(parse_family(g, over)?);
    let k = g.field().clone();
    let h = Correspondence::from_divisor(parse_family(h, Some(&k))?);
    let gh = compose(&g, &h)?;
    let mut r = Report::new("corr compose").field(k.name());
    r.put("g", g.render());
    r.put("h", h.render());
    r.put("composite", gh.render());
    r.put("fiber_degree", gh.fiber_degree());
    if let Some(m) = m {
        let m = parse_divisor(m, Some(&k))?;
        let lhs = act(&gh, &m)?;
        let rhs = act(&g, &act(&h, &m)?)?;
        r.put("m", m.render());
        r.put("image", lhs.render());
        r.check(Check::new("(g o h)^* m = g^* h^* m", lhs == rhs).with(rhs.render()));
    }
    Ok(r)
}

pub fn heisenberg(a: &str, b: &str) -> WbResult<Report> {
    let ga = FGAbelianGroup::parse_name(a)?;
    let gb = FGAbelianGroup::parse_name(b)?;
    let h = heisenberg_group(&ga, &gb)?;
    let e = &h.ext;
    let w = biadditivity_witness(&ga, &gb)?;
    let mut r = Report::new("heisenberg");
    r.put("a", ga.render());
    r.put("b", gb.render());
    r.put("tensor", h.tensor.render());
    r.put("order", h.order());
    r.put("center_order", e.center_order());
    r.put("commutator_order", e.commutator_subgroup_order());
    r.put("abelian", e.is_abelian());
    let corr: Vec<String> = (0..w.base.size()).map(|q| w.lhs.kernel().render(w.correction[q])).collect();
    r.put("witness_correction", corr);
    r.check(Check::new("group axioms", e.is_associative() && e.has_identity_and_inverses()));
    r.check(Check::new("kernel is central", e.kernel_is_central()));
    r.check(Check::new("quotient is A x B", e.quotient_is_base()));
    r.check(Check::new("cocycle is the tensor cocycle", h.cocycle_matches()));
    r.check(Check::new("biadditivity witness verified", w.verify()).with(format!("{} pairs", w.pairs_checked)));
    Ok(r)
}

/// Integer matrices given row by row; the target has one generator per row.
#[derive(Clone, Debug, Deserialize)]
pub struct ChainMapInput {
    pub d_a: Vec<Vec<i64>>,
    pub d_b: Vec<Vec<i64>>,
    pub f1: Vec<Vec<i64>>,
    pub f0: Vec<Vec<i64>>,
}

fn shape(name: &str, m: &[Vec<i64>]) -> WbResult<(usize, usize)> {
    let cols = m.first().map_or(0, |r| r.len());
    if m.is_empty() || cols == 0 || m.iter().any(|r| r.len() != cols) {
        return Err(WbError::Usage(format!("`{name}` must be a nonempty rectangular list of rows")));
    }
    Ok((m.len(), cols))
}

impl ChainMapInput {
    pub fn build(&self) -> WbResult<ChainMap> {
        let (a0, a1) = shape("d_a", &self.d_a)?;
        let (b0, b1) = shape("d_b", &self.d_b)?;
        if shape("f1", &self.f1)? != (b1, a1) || shape("f0", &self.f0)? != (b0, a0) {
            return Err(WbError::Usage("f1 must be rank(B1) x rank(A1) and f0 rank(B0) x rank(A0)".into()));
        }
        let flat = |m: &[Vec<i64>]| m.concat();
        let a = TwoTermComplex::free(a1, a0, &flat(&self.d_a));
        let b = TwoTermComplex::free(b1, b0, &flat(&self.d_b));
        let f1 = GroupHom::from_rows(a.a1(), b.a1(), &flat(&self.f1))?;
        let f0 = GroupHom::from_rows(a.a0(), b.a0(), &flat(&self.f0))?;
        Ok(ChainMap::new(&a, &b, f1, f0)?)
    }
}

/// Rows of integers; entries beyond `i64` become decimal strings.
pub fn matrix_json(m: &IntMatrix) -> Value {
    let entry = |i, j| {
        let v: &BigInt = m.get(i, j);
        v.to_i64().map_or_else(|| json!(v.to_string()), |x| json!(x))
    };
    let rows: Vec<Value> = (0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| entry(i, j)).collect())).collect();
    Value::Array(rows)
}

fn complex_json(c: &TwoTermComplex) -> Value {
    json!({"a1": c.a1().render(), "a0": c.a0().render(), "d": matrix_json(c.d().matrix()), "pi1": c.pi1().render(), "pi0": c.pi0().render()})
}

pub fn picard_coker(input: Option<&ChainMapInput>, seed: u64, rank: usize, bound: i64) -> WbResult<Report> {
    let f = match input {
        Some(i) => i.build()?,
        None => random_chain_map(rank, bound, &mut ChaCha8Rng::seed_from_u64(seed)),
    };
    let co = coker_functor(&f)?;
    let (target, _) = f.pi0_map().cokernel();
    let mut r = Report::new("picard coker");
    if input.is_none() {
        r.seed = Some(seed);
    }
    r.put("source", complex_json(f.src()));
    r.put("target", complex_json(f.dst()));
    r.put("f1", matrix_json(f.f1().matrix()));
    r.put("f0", matrix_json(f.f0().matrix()));
    r.put("coker", complex_json(&co.complex));
    r.put("pi0_of_coker", co.complex.pi0().render());
    r.put("coker_of_pi0", target.render());
    r.check(Check::new("pi0(Coker F) -> coker(pi0 F) is an isomorphism", co.pi0_iso.is_iso()));
    r.check(Check::new("invariant factors agree", co.complex.pi0().isomorphic(&target)));
    Ok(r)
}
