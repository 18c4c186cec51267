use deligne_core::algebra::poly::fpoly;
use deligne_core::algebra::{BaseField, FPoly, Field, Ring};
use deligne_core::corr::p1::point_form;
use deligne_core::corr::{act, act_via_deligne, compose, Correspondence, EcCorrespondence, EcMap, EcMorphism, EcTerm};
use deligne_core::curve::point::closed_points;
use deligne_core::curve::{ec_reduce, standard_curve, ClosedPoint, Divisor, EcDivisor};
use deligne_core::family::PicClass;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_map(k: &BaseField, rng: &mut ChaCha8Rng) -> (FPoly, FPoly) {
    loop {
        let dp = rng.gen_range(0..=3);
        let dq = rng.gen_range(0..=3);
        let p = FPoly::new((0..=dp).map(|_| k.random(rng)).collect(), k.zero());
        let q = FPoly::new((0..=dq).map(|_| k.random(rng)).collect(), k.zero());
        if q.is_zero() {
            continue;
        }
        let g = p.gcd(&q);
        let n = p.deg0().max(q.deg0());
        if n >= 1 && g.deg0() == 0 && !p.is_zero() {
            return (p, q);
        }
    }
}

// phi(b) for a rational b (or infinity) straight from p/q.
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

fn random_divisor(k: &BaseField, rng: &mut ChaCha8Rng) -> Divisor {
    let pts = closed_points(k, 3);
    let mut d = Divisor::zero();
    for _ in 0..rng.gen_range(1..4) {
        d.add_point(pts[rng.gen_range(0..pts.len())].clone(), rng.gen_range(-2..=2));
    }
    d
}

#[test]
fn graphs_push_rational_points_forward() {
    let k = BaseField::gf_q(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let (p, q) = random_map(&k, &mut rng);
        let g = Correspondence::graph(&p, &q).unwrap();
        for b in closed_points(&k, 1) {
            let img = act(&g, &Divisor::point(b.clone())).unwrap();
            assert_eq!(img, Divisor::point(eval_map(&p, &q, &b)), "{} at {b}", g.render());
        }
    }
}

#[test]
fn point_forms_cut_out_points() {
    let k = BaseField::gf_q(3).unwrap();
    for b in closed_points(&k, 2) {
        let f = point_form(&b, &k, true);
        assert_eq!(f.bidegree(), (0, b.degree() as u32));
    }
}

#[test]
fn deligne_route_example() {
    let k = BaseField::gf_q(5).unwrap();
    let sq = Correspondence::graph_poly(&fpoly(&k, &[0, 0, 1])).unwrap();
    let m = Divisor::from_terms([(ClosedPoint::rational(&k.from_i64(2)), 1), (ClosedPoint::rational(&k.one()), -1)]);
    let via = act_via_deligne(&sq, &m).unwrap();
    assert_eq!(via.divisor, act(&sq, &m).unwrap());
    assert_eq!(via.class, PicClass::Degree(0));
}

#[test]
fn elliptic_reduce_is_onto_a_group_of_nine() {
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
    assert_eq!(brute, 9);
    let pts = e.points();
    let mut image: Vec<_> = pts
        .iter()
        .map(|p| ec_reduce(&e, &EcDivisor::from_points([(p.clone(), 1), (pts[0].clone(), -1)])).unwrap())
        .collect();
    image.sort();
    image.dedup();
    assert_eq!(image.len(), brute);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn composition_is_functorial(seed in any::<u64>()) {
        let k = BaseField::gf_q(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p1, q1) = random_map(&k, &mut rng);
        let (p2, q2) = random_map(&k, &mut rng);
        let g = Correspondence::graph(&p1, &q1).unwrap();
        let h = Correspondence::graph(&p2, &q2).unwrap();
        let gh = compose(&g, &h).unwrap();
        let m = random_divisor(&k, &mut rng);
        prop_assert_eq!(act(&gh, &m).unwrap(), act(&g, &act(&h, &m).unwrap()).unwrap());
        prop_assert_eq!(gh.fiber_degree(), g.fiber_degree() * h.fiber_degree());
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let k = BaseField::gf_q(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c: Vec<Correspondence> = (0..3)
            .map(|_| {
                let (p, q) = random_map(&k, &mut rng);
                Correspondence::graph(&p, &q).unwrap()
            })
            .collect();
        let left = compose(&compose(&c[0], &c[1]).unwrap(), &c[2]).unwrap();
        let right = compose(&c[0], &compose(&c[1], &c[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn elliptic_functoriality(seed in any::<u64>()) {
        let e = standard_curve();
        let pts = e.points();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pick = |rng: &mut ChaCha8Rng| match rng.gen_range(0..4) {
            0 => EcMap::Mul(rng.gen_range(1..4) * if rng.gen_bool(0.5) { 1 } else { -1 }),
            1 => EcMap::Frob,
            2 => EcMap::Translate(pts[rng.gen_range(0..pts.len())].clone()),
            _ => EcMap::Neg,
        };
        let g = EcCorrespondence::graph(EcMorphism::single(pick(&mut rng)).unwrap())
            .add(&EcCorrespondence::term(EcTerm::H(pts[rng.gen_range(0..pts.len())].clone())));
        let h = EcCorrespondence::graph(EcMorphism::single(pick(&mut rng)).unwrap()).scale(rng.gen_range(1..3));
        let gh = g.compose(&e, &h).unwrap();
        for p in &pts {
            let lhs = gh.induced_map(&e, p).unwrap();
            let rhs = g.induced_map(&e, &h.induced_map(&e, p).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
