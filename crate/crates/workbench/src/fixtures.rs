//! Named inputs that can be pasted into the other subcommands.

use deligne_core::algebra::poly::fpoly;
use deligne_core::algebra::BaseField;
use deligne_core::corr::Correspondence;
use deligne_core::curve::standard_curve;
use deligne_core::picard::{heisenberg, random_chain_map, FGAbelianGroup};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::run::matrix_json;

pub struct Fixture {
    pub name: &'static str,
    pub summary: &'static str,
    pub value: Value,
}

fn graph(q: u64, coeffs: &[i64]) -> Value {
    let k = BaseField::gf_q(q).expect("prime power");
    let c = Correspondence::graph_poly(&fpoly(&k, coeffs)).expect("nonconstant");
    json!(format!("{} over {}", c.render(), k.name()))
}

fn heisenberg_table(a: &str, b: &str) -> Value {
    let h = heisenberg(&FGAbelianGroup::parse_name(a).expect("name"), &FGAbelianGroup::parse_name(b).expect("name"))
        .expect("finite groups");
    let n = h.order();
    let elems: Vec<String> = (0..n).map(|x| h.render(x)).collect();
    let rows: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| h.mul(x, y)).collect()).collect();
    json!({"elements": elems, "table": rows})
}

fn elliptic() -> Value {
    let e = standard_curve();
    let pts = e.points();
    let names: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
    let rows: Vec<Vec<usize>> = pts
        .iter()
        .map(|p| pts.iter().map(|q| pts.iter().position(|r| *r == e.add(p, q)).expect("closed")).collect())
        .collect();
    json!({"curve": "y^2 = x^3 + x + 1 over GF(5)", "points": names, "addition": rows})
}

fn chain_map() -> Value {
    // the first seed whose groups all have positive rank, so every matrix has a row and a column
    let f = (0..)
        .map(|s| random_chain_map(3, 4, &mut ChaCha8Rng::seed_from_u64(s)))
        .find(|f| [f.src(), f.dst()].iter().all(|c| c.a1().gens() > 0 && c.a0().gens() > 0))
        .expect("some seed");
    json!({
        "d_a": matrix_json(f.src().d().matrix()),
        "d_b": matrix_json(f.dst().d().matrix()),
        "f1": matrix_json(f.f1().matrix()),
        "f0": matrix_json(f.f0().matrix()),
    })
}

pub fn all() -> Vec<Fixture> {
    vec![
        Fixture { name: "diagonal", summary: "the diagonal of P1 x P1", value: graph(5, &[0, 1]) },
        Fixture { name: "shift", summary: "graph of t -> t + 1", value: graph(5, &[1, 1]) },
        Fixture { name: "square", summary: "graph of t -> t^2", value: graph(5, &[0, 0, 1]) },
        Fixture { name: "frobenius", summary: "graph of Frobenius t -> t^3 over GF(9)", value: graph(9, &[0, 0, 0, 1]) },
        Fixture {
            name: "weil-pair",
            summary: "two functions over QQ with disjoint divisors",
            value: json!({"f": "t over QQ", "g": "(t - 1)/(t - 2) over QQ"}),
        },
        Fixture { name: "heisenberg-z2", summary: "multiplication table of H(Z2, Z2)", value: heisenberg_table("Z2", "Z2") },
        Fixture { name: "heisenberg-z3", summary: "multiplication table of H(Z3, Z3)", value: heisenberg_table("Z3", "Z3") },
        Fixture { name: "elliptic", summary: "points and addition table of y^2 = x^3 + x + 1 over GF(5)", value: elliptic() },
        Fixture { name: "chain-map", summary: "a chain map for `picard coker --matrices`", value: chain_map() },
    ]
}

pub fn get(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}
