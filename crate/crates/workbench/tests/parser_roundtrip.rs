use deligne_core::algebra::BaseField;
use deligne_core::curve::function::random_function;
use deligne_core::curve::point::closed_points;
use deligne_core::curve::Divisor;
use deligne_core::family::{irreducible_forms, FamilyDivisor};
use deligne_workbench::parse::{parse_divisor, parse_expr, parse_family, parse_function, Expr};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const QS: [u64; 5] = [2, 3, 5, 9, 25];

fn tagged(body: String, k: &BaseField) -> String {
    format!("{body} over {}", k.name())
}

#[test]
fn rational_functions_roundtrip() {
    let q = BaseField::Rational;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let f = random_function(&q, 3, &mut rng);
        let back = parse_function(&tagged(f.render(), &q), None).unwrap();
        assert_eq!(back, f, "{}", f.render());
    }
}

#[test]
fn weird_spacing_and_juxtaposition() {
    let k = BaseField::gf_q(7).unwrap();
    let a = parse_function("2t(t-1)^2/(t+3)^(-1)", Some(&k)).unwrap();
    let b = parse_function("  2 * t * (t - 1) ^ 2 * (t + 3) ", Some(&k)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn extension_constant_over_denominator() {
    let k = BaseField::gf_q(9).unwrap();
    for text in ["(a + 2)/(t^2 + a)", "(a + 2)*(t + 1)/(t)", "(2*a + 1)/((t)*(t + a))"] {
        let f = parse_function(text, Some(&k)).unwrap();
        assert_eq!(parse_function(&tagged(f.render(), &k), None).unwrap(), f, "{}", f.render());
    }
}

#[test]
fn guess_agrees_with_typed_parsers() {
    let k = BaseField::gf_q(5).unwrap();
    let d = parse_divisor("2*(0) - (t^2 + 2) - (inf)", Some(&k)).unwrap();
    assert_eq!(parse_expr(&tagged(d.render(), &k)).unwrap(), Expr::Divisor(d));
    let f = parse_function("3*(t + 1)^2/(t)", Some(&k)).unwrap();
    assert_eq!(parse_expr(&tagged(f.render(), &k)).unwrap(), Expr::Function(f));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn functions_roundtrip(seed in any::<u64>(), qi in 0usize..QS.len()) {
        let k = BaseField::gf_q(QS[qi]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_function(&k, 5, &mut rng);
        let text = tagged(f.render(), &k);
        prop_assert_eq!(parse_function(&text, None).unwrap(), f);
    }

    #[test]
    fn divisors_roundtrip(seed in any::<u64>(), qi in 0usize..QS.len()) {
        let k = BaseField::gf_q(QS[qi]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = closed_points(&k, 2);
        let mut d = Divisor::zero();
        for _ in 0..rng.gen_range(0..5) {
            d.add_point(pts[rng.gen_range(0..pts.len())].clone(), rng.gen_range(-3..=3));
        }
        let text = tagged(d.render(), &k);
        prop_assert_eq!(parse_divisor(&text, None).unwrap(), d);
    }

    #[test]
    fn family_divisors_roundtrip(seed in any::<u64>(), qi in 0usize..3) {
        let k = BaseField::gf_q(QS[qi]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut forms = Vec::new();
        for (a, b) in [(1, 0), (0, 1), (1, 1), (2, 1)] {
            forms.extend(irreducible_forms(&k, a, b).unwrap());
        }
        let comps: Vec<_> = (0..rng.gen_range(1..4))
            .map(|_| (forms[rng.gen_range(0..forms.len())].clone(), rng.gen_range(-2..=2)))
            .collect();
        let d = FamilyDivisor::from_components(&k, comps).unwrap();
        let text = tagged(d.render(), &k);
        prop_assert_eq!(parse_family(&text, None).unwrap(), d);
    }
}
