//! The ten acceptance criteria. Each runs alone (a shared lock keeps the timings honest on small
//! machines) and writes one `PASS`/`FAIL` line straight to stdout, so the lines survive output capture.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Mutex;
use std::time::Instant;

use deligne_core::algebra::snf::IntMatrix;
use deligne_core::algebra::{BaseField, FPoly, Fe, Field, Ring};
use deligne_core::corr::{act, act_via_deligne, compose, Correspondence, EcCorrespondence, EcMap, EcMorphism};
use deligne_core::curve::function::random_function;
use deligne_core::curve::point::closed_points;
use deligne_core::curve::{ec_reduce, standard_curve, ClosedPoint, Divisor, ECPoint, EcDivisor, FactoredFunction};
use deligne_core::family::{
    cocycle_of_divisor, compare_routes, cup_cocycle, irreducible_forms, lambda_boundary, BaseCover, FamilyBase,
    FamilyDivisor, PicClass, XCover,
};
use deligne_core::picard::heisenberg::Fin;
use deligne_core::picard::{biadditivity_witness, coker_functor, heisenberg, random_chain_map, FGAbelianGroup};
use deligne_core::symbols::sum::random_symbol_sum;
use deligne_core::symbols::{deligne_scalar, gersten_norm, tame_vector_of, weil_product};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

static SERIAL: Mutex<()> = Mutex::new(());

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion(n: u32, title: &str, limit_s: f64, body: impl FnOnce() -> Outcome) {
    let _serial = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let secs = start.elapsed().as_secs_f64();
    let (ok, detail) = match outcome {
        Ok(Ok(d)) if secs <= limit_s => (true, d),
        Ok(Ok(d)) => (false, format!("{d}; over the time limit")),
        Ok(Err(e)) => (false, e),
        Err(_) => (false, "panicked".to_string()),
    };
    let status = if ok { "PASS" } else { "FAIL" };
    let line = format!("acceptance {n:>2} {status} {title} [{secs:.2}s of {limit_s}s] {detail}\n");
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
    assert!(ok, "{}", line.trim_end());
}

const QS: [u64; 4] = [2, 3, 5, 9];

// ---------- oracles ----------

/// `g(div f)` for split `f`, `g` given as lists `(a, e)` of linear factors with total degree 0.
fn split_pairing(f: &[(Fe, i64)], g: &[(Fe, i64)]) -> Fe {
    let mut acc = f[0].0.field().one();
    for (a, e) in f {
        let mut v = a.field().one();
        for (b, n) in g {
            v = v.mul(&a.sub(b).pow_i(*n).unwrap());
        }
        acc = acc.mul(&v.pow_i(*e).unwrap());
    }
    acc
}

fn split_function(k: &BaseField, parts: &[(Fe, i64)]) -> FactoredFunction {
    let mut f = FactoredFunction::one(k);
    for (a, e) in parts {
        f = f.mul(&FactoredFunction::linear(a).pow(*e));
    }
    f
}

/// `phi(b) = p(b)/q(b)` at a rational point or infinity.
fn eval_map(p: &FPoly, q: &FPoly, b: &ClosedPoint) -> ClosedPoint {
    let n = p.deg0().max(q.deg0());
    let (num, den) = match b.rational_value() {
        Some(x) => (p.eval(&x), q.eval(&x)),
        None => {
            let lead = |f: &FPoly| if f.deg0() == n { f.lead() } else { f.lead().zero_like() };
            (lead(p), lead(q))
        }
    };
    if den.is_zero() {
        ClosedPoint::Infinity
    } else {
        ClosedPoint::rational(&num.div(&den).unwrap())
    }
}

/// Invariant factors of `Z^rows / M` from gcds of `k x k` minors, as (torsion > 1, free rank).
fn determinantal_invariants(m: &IntMatrix) -> (Vec<BigInt>, usize) {
    fn det(rows: &[usize], cols: &[usize], m: &IntMatrix) -> BigInt {
        if rows.is_empty() {
            return BigInt::one();
        }
        let mut acc = BigInt::zero();
        for (j, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let t = m.get(rows[0], c) * det(&rows[1..], &rest, m);
            if j % 2 == 0 {
                acc += t
            } else {
                acc -= t
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
    let mut tors = Vec::new();
    let mut rank = 0;
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
        let d = &g / &prev;
        if !d.is_one() {
            tors.push(d);
        }
        prev = g;
        rank = k;
    }
    (tors, m.rows() - rank)
}

/// Center and commutator subgroup orders of the Heisenberg law on raw tuples over `Z/n`.
fn tuple_heisenberg(n: u64) -> (usize, usize) {
    let els: Vec<(u64, u64, u64)> =
        (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |t| (a, b, t)))).collect();
    let mul = |x: (u64, u64, u64), y: (u64, u64, u64)| ((x.0 + y.0) % n, (x.1 + y.1) % n, (x.2 + y.2 + x.0 * y.1) % n);
    let center = els.iter().filter(|&&x| els.iter().all(|&y| mul(x, y) == mul(y, x))).count();
    let mut comm = std::collections::BTreeSet::from([0u64]);
    for x in &els {
        for y in &els {
            comm.insert((x.0 * y.1 + n * n - y.0 * x.1) % n);
        }
    }
    let step = comm.iter().copied().filter(|&c| c != 0).fold(n, |g, c| g.gcd(&c));
    (center, (n / step) as usize)
}

fn cyclic_orders(name: &str) -> Vec<u64> {
    name.split('x').map(|s| s.trim_start_matches('Z').parse().unwrap()).collect()
}

// ---------- helpers ----------

fn disjoint_pair(k: &BaseField, rng: &mut ChaCha8Rng) -> (FactoredFunction, FactoredFunction) {
    loop {
        let f = random_function(k, 3, rng);
        let g = random_function(k, 3, rng);
        if !f.divisor().meets(&g.divisor()) {
            return (f, g);
        }
    }
}

fn random_map(k: &BaseField, rng: &mut ChaCha8Rng) -> (FPoly, FPoly) {
    loop {
        let p = FPoly::new((0..=rng.gen_range(0..=3)).map(|_| k.random(rng)).collect(), k.zero());
        let q = FPoly::new((0..=rng.gen_range(0..=3)).map(|_| k.random(rng)).collect(), k.zero());
        if p.is_zero() || q.is_zero() {
            continue;
        }
        if p.deg0().max(q.deg0()) >= 1 && p.gcd(&q).deg0() == 0 {
            return (p, q);
        }
    }
}

fn random_divisor(k: &BaseField, degree_zero: bool, rng: &mut ChaCha8Rng) -> Divisor {
    let pts = closed_points(k, 2);
    let mut d = Divisor::zero();
    for _ in 0..rng.gen_range(1..4) {
        d.add_point(pts[rng.gen_range(0..pts.len())].clone(), rng.gen_range(-2..=2));
    }
    if degree_zero {
        d.add_point(ClosedPoint::Infinity, -d.degree());
    }
    d
}

const SWEEP: [(u32, u32); 5] = [(1, 0), (0, 1), (1, 1), (2, 0), (2, 1)];

fn sweep() -> Vec<FamilyDivisor> {
    let k = BaseField::gf_q(3).unwrap();
    SWEEP
        .iter()
        .flat_map(|&(a, b)| irreducible_forms(&k, a, b).unwrap())
        .map(|f| FamilyDivisor::from_form(&f).unwrap())
        .collect()
}

// ---------- criteria ----------

#[test]
fn c01_weil_reciprocity() {
    criterion(1, "Weil reciprocity", 10.0, || {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for i in 0..200 {
            let k = BaseField::gf_q(QS[i % QS.len()]).unwrap();
            let f = random_function(&k, 6, &mut rng);
            let g = random_function(&k, 6, &mut rng);
            let w = weil_product(&f, &g);
            ensure(w.is_one(), || format!("pair {i} over {}: {} and {} give {w}", k.name(), f.render(), g.render()))?;
        }
        Ok("200 pairs over GF(2), GF(3), GF(5), GF(9)".into())
    });
}

#[test]
fn c02_deligne_scalar() {
    criterion(2, "Deligne pairing symmetric and bimultiplicative", 10.0, || {
        let mut rng = ChaCha8Rng::seed_from_u64(102);
        for i in 0..100 {
            let k = BaseField::gf_q(QS[i % QS.len()]).unwrap();
            let (f, g) = disjoint_pair(&k, &mut rng);
            let (a, b) = (deligne_scalar(&f, &g).unwrap(), deligne_scalar(&g, &f).unwrap());
            ensure(a == b, || format!("<{f}, {g}>: {a} vs {b}"))?;
        }
        for i in 0..100 {
            let k = BaseField::gf_q(QS[i % QS.len()]).unwrap();
            let (f1, g) = disjoint_pair(&k, &mut rng);
            let f2 = loop {
                let f2 = random_function(&k, 3, &mut rng);
                if !f2.divisor().meets(&g.divisor()) {
                    break f2;
                }
            };
            let lhs = deligne_scalar(&f1.mul(&f2), &g).unwrap();
            let rhs = deligne_scalar(&f1, &g).unwrap().mul(&deligne_scalar(&f2, &g).unwrap());
            ensure(lhs == rhs, || format!("<{f1} * {f2}, {g}>"))?;
            let lhs = deligne_scalar(&g, &f1.mul(&f2)).unwrap();
            let rhs = deligne_scalar(&g, &f1).unwrap().mul(&deligne_scalar(&g, &f2).unwrap());
            ensure(lhs == rhs, || format!("<{g}, {f1} * {f2}>"))?;
        }
        // split functions against the pointwise product
        for &q in &[5u64, 7, 9] {
            let k = BaseField::gf_q(q).unwrap();
            let el = k.elements();
            for _ in 0..10 {
                let mut idx: Vec<usize> = (0..el.len()).collect();
                for j in 0..4 {
                    let r = rng.gen_range(j..idx.len());
                    idx.swap(j, r);
                }
                let (e1, e2) = (rng.gen_range(1..3), rng.gen_range(1..3));
                let f = vec![(el[idx[0]].clone(), e1), (el[idx[1]].clone(), -e1)];
                let g = vec![(el[idx[2]].clone(), e2), (el[idx[3]].clone(), -e2)];
                let got = deligne_scalar(&split_function(&k, &f), &split_function(&k, &g)).unwrap();
                ensure(got == split_pairing(&f, &g), || format!("split oracle over GF({q})"))?;
            }
        }
        Ok("100 symmetric pairs, 100 triples, 30 split oracle cases".into())
    });
}

#[test]
fn c03_gersten_kills_symbols() {
    criterion(3, "Gersten norm of tame symbols", 30.0, || {
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        for i in 0..100 {
            let k = BaseField::gf_q(QS[i % QS.len()]).unwrap();
            let s = random_symbol_sum(&k, 3, 3, &mut rng);
            let n = gersten_norm(&tame_vector_of(&s));
            ensure(n.is_one(), || format!("sum {i} over {}: {} has norm {n}", k.name(), s.render()))?;
        }
        Ok("100 symbol sums".into())
    });
}

#[test]
fn c04_top_triangle_sweep() {
    criterion(4, "lambda boundary + cup vanishes on the F3 sweep", 60.0, || {
        let k = BaseField::gf_q(3).unwrap();
        let divs = sweep();
        ensure(divs.len() == 251, || format!("sweep has {} forms", divs.len()))?;
        let xc = XCover::standard(&k, FamilyBase::P1);
        let cocycles: Vec<_> = divs.iter().map(|d| cocycle_of_divisor(d, &xc).unwrap()).collect();
        let mut pairs = 0;
        for (i, d) in divs.iter().enumerate() {
            for (j, b) in cocycles.iter().enumerate() {
                if i == j {
                    continue;
                }
                let total = lambda_boundary(d, b).unwrap().add(&cup_cocycle(&cocycles[i], b).unwrap());
                ensure(total.is_zero(), || format!("D = {d}, E = {}", divs[j]))?;
                pairs += 1;
            }
        }
        Ok(format!("{pairs} ordered pairs"))
    });
}

#[test]
fn c05_bottom_square_sweep() {
    criterion(5, "theta and norm routes agree on the F3 sweep", 120.0, || {
        let k = BaseField::gf_q(3).unwrap();
        let divs = sweep();
        let cover = BaseCover::standard(&k, FamilyBase::P1);
        let mut pairs = 0;
        for (i, d) in divs.iter().enumerate() {
            if d.has_vertical_component() {
                continue;
            }
            let (a, b) = d.bidegree();
            for (j, e) in divs.iter().enumerate() {
                if i == j {
                    continue;
                }
                let cmp = compare_routes(d, e, &cover).unwrap();
                let (c, dd) = e.bidegree();
                ensure(cmp.agree, || format!("routes differ for D = {d}, E = {e}"))?;
                ensure(cmp.norm.class == PicClass::Degree(a * dd + b * c), || {
                    format!("class {} for D = {d}, E = {e}", cmp.norm.class)
                })?;
                pairs += 1;
            }
        }
        Ok(format!("{pairs} ordered pairs"))
    });
}

#[test]
fn c06_composition_functorial() {
    criterion(6, "composition of correspondences is functorial", 30.0, || {
        let k = BaseField::gf_q(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(106);
        for i in 0..50 {
            let (p1, q1) = random_map(&k, &mut rng);
            let (p2, q2) = random_map(&k, &mut rng);
            let g = Correspondence::graph(&p1, &q1).unwrap();
            let h = Correspondence::graph(&p2, &q2).unwrap();
            let gh = compose(&g, &h).unwrap();
            let m = random_divisor(&k, false, &mut rng);
            let (lhs, rhs) = (act(&gh, &m).unwrap(), act(&g, &act(&h, &m).unwrap()).unwrap());
            ensure(lhs == rhs, || format!("pair {i}: g = {}, h = {}, m = {m}: {lhs} vs {rhs}", g.render(), h.render()))?;
            // rational points move by evaluation
            for b in closed_points(&k, 1) {
                let img = act(&h, &Divisor::point(b.clone())).unwrap();
                ensure(img == Divisor::point(eval_map(&p2, &q2, &b)), || format!("{} at {b}", h.render()))?;
            }
        }
        let pts = closed_points(&k, 2);
        for _ in 0..20 {
            let d = pts[rng.gen_range(0..pts.len())].clone();
            let m = loop {
                let m = random_divisor(&k, true, &mut rng);
                if m.multiplicity(&d) == 0 {
                    break m;
                }
            };
            let v = act(&Correspondence::vertical(&d, &k), &m).unwrap();
            let h = act(&Correspondence::horizontal(&d, &k), &m).unwrap();
            ensure(v.is_zero() && h.is_zero(), || format!("degenerate at {d} on {m}: {v}, {h}"))?;
        }
        Ok("50 composites, 20 degenerate checks".into())
    });
}

#[test]
fn c07_action_via_deligne() {
    criterion(7, "action through the Deligne pairing", 60.0, || {
        let k = BaseField::gf_q(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(107);
        for i in 0..20 {
            let (p, q) = random_map(&k, &mut rng);
            let alpha = Correspondence::graph(&p, &q).unwrap();
            let m = random_divisor(&k, false, &mut rng);
            let direct = act(&alpha, &m).unwrap();
            let via = act_via_deligne(&alpha, &m).unwrap();
            ensure(via.routes_agree, || format!("instance {i}: routes disagree"))?;
            ensure(via.class == PicClass::Degree(direct.degree()), || {
                format!("instance {i}: class {} vs degree {}", via.class, direct.degree())
            })?;
            ensure(via.divisor == direct, || format!("instance {i}: {} vs {direct}", via.divisor))?;
        }
        Ok("20 instances".into())
    });
}

#[test]
fn c08_elliptic_curve() {
    criterion(8, "elliptic curve over F5", 5.0, || {
        let e = standard_curve();
        let k = e.field();
        let mut brute = 1;
        for x in k.elements() {
            for y in k.elements() {
                if y.mul(&y) == x.pow_u(3).add(&x).add(&k.one()) {
                    brute += 1;
                }
            }
        }
        let pts = e.points();
        ensure(pts.len() == brute && brute == 9, || format!("{} points, brute force {brute}", pts.len()))?;
        let o = ECPoint::Identity;
        let class = |p: &ECPoint| ec_reduce(&e, &EcDivisor::from_points([(p.clone(), 1), (o.clone(), -1)])).unwrap();
        let mut image: Vec<ECPoint> = pts.iter().map(class).collect();
        image.sort();
        image.dedup();
        ensure(image.len() == brute, || format!("image has {} points", image.len()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(108);
        let random_div = |rng: &mut ChaCha8Rng| {
            let mut d = EcDivisor::zero();
            for _ in 0..3 {
                d = d.add(&EcDivisor::from_points([(pts[rng.gen_range(0..9)].clone(), rng.gen_range(-2..=2))]));
            }
            d.add(&EcDivisor::from_points([(o.clone(), -d.degree())]))
        };
        for _ in 0..50 {
            let (d1, d2) = (random_div(&mut rng), random_div(&mut rng));
            let lhs = ec_reduce(&e, &d1.add(&d2)).unwrap();
            let rhs = e.add(&ec_reduce(&e, &d1).unwrap(), &ec_reduce(&e, &d2).unwrap());
            ensure(lhs == rhs, || format!("reduce is not additive on {} and {}", d1.render(), d2.render()))?;
        }
        for p in &pts {
            for q in &pts {
                if let Some(l) = e.line_through(p, q) {
                    let r = ec_reduce(&e, &e.line_divisor(&l).unwrap()).unwrap();
                    ensure(r == o, || format!("line through {p} and {q} reduces to {r}"))?;
                }
            }
        }
        let pick = |rng: &mut ChaCha8Rng| match rng.gen_range(0..4) {
            0 => EcMap::Mul(rng.gen_range(1..4) * if rng.gen_bool(0.5) { 1 } else { -1 }),
            1 => EcMap::Frob,
            2 => EcMap::Translate(pts[rng.gen_range(0..9)].clone()),
            _ => EcMap::Neg,
        };
        for _ in 0..30 {
            let (phi, psi) = (EcMorphism::single(pick(&mut rng)).unwrap(), EcMorphism::single(pick(&mut rng)).unwrap());
            let (g, h) = (EcCorrespondence::graph(phi.clone()), EcCorrespondence::graph(psi.clone()));
            let gh = g.compose(&e, &h).unwrap();
            for p in &pts {
                let direct = e.sub(&phi.apply(&e, p), &phi.apply(&e, &o));
                ensure(g.induced_map(&e, p).unwrap() == direct, || format!("{} on {p}", phi.render()))?;
                let lhs = gh.induced_map(&e, p).unwrap();
                let rhs = g.induced_map(&e, &h.induced_map(&e, p).unwrap()).unwrap();
                ensure(lhs == rhs, || format!("{} after {} on {p}", phi.render(), psi.render()))?;
            }
        }
        Ok("9 points, 50 additivity checks, 30 composed graphs".into())
    });
}

#[test]
fn c09_heisenberg_suite() {
    criterion(9, "Heisenberg groups and biadditivity witnesses", 30.0, || {
        let names = ["Z2", "Z3", "Z4", "Z2xZ2"];
        for a in names {
            for b in names {
                let (ga, gb) = (FGAbelianGroup::parse_name(a).unwrap(), FGAbelianGroup::parse_name(b).unwrap());
                let h = heisenberg(&ga, &gb).unwrap();
                let tensor: u64 =
                    cyclic_orders(a).iter().flat_map(|&m| cyclic_orders(b).into_iter().map(move |n| m.gcd(&n))).product();
                let expected = (Fin::of_group(&ga).unwrap().size() * Fin::of_group(&gb).unwrap().size()) as u64 * tensor;
                ensure(h.order() as u64 == expected, || format!("H({a}, {b}) has order {}", h.order()))?;
                let x = &h.ext;
                ensure(x.is_associative() && x.has_identity_and_inverses(), || format!("H({a}, {b}) is not a group"))?;
                ensure(x.kernel_is_central() && x.quotient_is_base(), || format!("H({a}, {b}) is not central"))?;
                ensure(h.cocycle_matches(), || format!("H({a}, {b}) cocycle is not the tensor cocycle"))?;
                let w = biadditivity_witness(&ga, &gb).map_err(|e| format!("no witness for ({a}, {b}): {e}"))?;
                ensure(w.verify(), || format!("witness for ({a}, {b}) fails"))?;
                if a == b && !a.contains('x') {
                    let n = cyclic_orders(a)[0];
                    let (center, comm) = tuple_heisenberg(n);
                    ensure(x.center_order() == center && x.commutator_subgroup_order() == comm, || {
                        format!("H({a}, {a}) center/commutator disagree with tuples")
                    })?;
                }
            }
        }
        Ok("16 pairs".into())
    });
}

#[test]
fn c10_picard_coker() {
    criterion(10, "pi0 of the cokernel is the cokernel of pi0", 10.0, || {
        let mut rng = ChaCha8Rng::seed_from_u64(110);
        for i in 0..100 {
            let f = random_chain_map(3, 4, &mut rng);
            let co = coker_functor(&f).map_err(|e| format!("map {i}: {e}"))?;
            let b = f.dst();
            let pres = b.a0().relations().hcat(b.d().matrix()).hcat(f.f0().matrix());
            let oracle = determinantal_invariants(&pres);
            ensure(co.complex.pi0().invariants() == oracle, || {
                format!("map {i}: pi0 Coker {} vs oracle {:?}", co.complex.pi0(), oracle)
            })?;
            ensure(co.pi0_target.invariants() == oracle, || format!("map {i}: coker pi0 {}", co.pi0_target))?;
            ensure(co.pi0_iso.is_iso(), || format!("map {i}: comparison map is not an isomorphism"))?;
        }
        Ok("100 chain maps".into())
    });
}
