//! Two-term complexes `[A-1 -> A0]` as Picard categories, chain maps, and the cokernel construction.

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::Rng;

use super::group::{FGAbelianGroup, GroupHom};
use crate::algebra::snf::{integer_kernel, IntMatrix};
use crate::algebra::BaseField;
use crate::curve::ClosedPoint;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct TwoTermComplex {
    d: GroupHom,
}

impl TwoTermComplex {
    pub fn new(d: GroupHom) -> Self {
        TwoTermComplex { d }
    }

    /// Free groups of the given ranks with `d` given row by row.
    pub fn free(n1: usize, n0: usize, d: &[i64]) -> Self {
        let (a1, a0) = (FGAbelianGroup::free(n1), FGAbelianGroup::free(n0));
        TwoTermComplex { d: GroupHom::from_rows(&a1, &a0, d).expect("free source") }
    }

    pub fn a1(&self) -> &FGAbelianGroup {
        self.d.src()
    }

    pub fn a0(&self) -> &FGAbelianGroup {
        self.d.dst()
    }

    pub fn d(&self) -> &GroupHom {
        &self.d
    }

    pub fn pi0(&self) -> FGAbelianGroup {
        self.d.cokernel().0
    }

    pub fn pi1(&self) -> FGAbelianGroup {
        self.d.kernel().0
    }

    pub fn zero() -> Self {
        Self::free(0, 0, &[])
    }
}

/// `(f-1, f0)` with `d_B f-1 = f0 d_A`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    src: TwoTermComplex,
    dst: TwoTermComplex,
    f1: GroupHom,
    f0: GroupHom,
}

impl ChainMap {
    pub fn new(src: &TwoTermComplex, dst: &TwoTermComplex, f1: GroupHom, f0: GroupHom) -> Result<Self> {
        if f1.src() != src.a1() || f1.dst() != dst.a1() || f0.src() != src.a0() || f0.dst() != dst.a0() {
            return Err(Error::Mismatch("chain map components do not match the complexes".into()));
        }
        if !dst.d.after(&f1).same_map(&f0.after(&src.d)) {
            return Err(Error::NotChainMap);
        }
        Ok(ChainMap { src: src.clone(), dst: dst.clone(), f1, f0 })
    }

    pub fn identity(c: &TwoTermComplex) -> Self {
        ChainMap { src: c.clone(), dst: c.clone(), f1: GroupHom::identity(c.a1()), f0: GroupHom::identity(c.a0()) }
    }

    pub fn src(&self) -> &TwoTermComplex {
        &self.src
    }

    pub fn dst(&self) -> &TwoTermComplex {
        &self.dst
    }

    pub fn f1(&self) -> &GroupHom {
        &self.f1
    }

    pub fn f0(&self) -> &GroupHom {
        &self.f0
    }

    /// `pi0(F): coker d_A -> coker d_B`, presented on the generators of `A0` and `B0`.
    pub fn pi0_map(&self) -> GroupHom {
        GroupHom::new(&self.src.pi0(), &self.dst.pi0(), self.f0.matrix().clone()).expect("chain maps descend")
    }

    /// `pi1(F): ker d_A -> ker d_B`.
    pub fn pi1_map(&self) -> GroupHom {
        let (ka, ia) = self.src.d.kernel();
        let (kb, ib) = self.dst.d.kernel();
        let cols: Vec<Vec<BigInt>> = (0..ka.gens())
            .map(|j| {
                let b = self.f1.apply(&ia.apply(&ka.basis(j)));
                ib.preimage(&b).expect("chain maps preserve kernels")
            })
            .collect();
        GroupHom::new(&ka, &kb, IntMatrix::from_columns(kb.gens(), &cols)).expect("well defined")
    }
}

/// `Coker F = [B-1 + A0 / (f-1 a, -d_A a) -> B0]` with its projection from `B` and the trivialization of `p o F`.
#[derive(Clone, Debug)]
pub struct CokerData {
    pub complex: TwoTermComplex,
    /// `p_F: B -> Coker F`.
    pub projection: ChainMap,
    /// `h: A0 -> E` with `d h = p0 f0` and `h d_A = p-1 f-1`.
    pub trivialization: GroupHom,
    /// `pi0(Coker F) -> coker(pi0 F)` and its inverse.
    pub pi0_iso: GroupHom,
    pub pi0_inv: GroupHom,
    pub pi0_target: FGAbelianGroup,
}

pub fn coker_functor(f: &ChainMap) -> Result<CokerData> {
    let (a, b) = (&f.src, &f.dst);
    let (nb1, na0) = (b.a1().gens(), a.a0().gens());
    let mut rels = b.a1().relations().block_diag(a.a0().relations());
    let glue = f.f1.matrix().vcat(&a.d.matrix().neg());
    rels = rels.hcat(&glue);
    let e = FGAbelianGroup::new(rels);
    let dc = GroupHom::new(&e, b.a0(), b.d.matrix().hcat(f.f0.matrix()))?;
    let complex = TwoTermComplex::new(dc);
    let p1 = GroupHom::new(b.a1(), &e, IntMatrix::identity(nb1).vcat(&IntMatrix::zeros(na0, nb1)))?;
    let projection = ChainMap::new(b, &complex, p1, GroupHom::identity(b.a0()))?;
    let h = GroupHom::new(a.a0(), &e, IntMatrix::zeros(nb1, na0).vcat(&IntMatrix::identity(na0)))?;
    if !complex.d.after(&h).same_map(&projection.f0.after(&f.f0))
        || !h.after(&a.d).same_map(&projection.f1.after(&f.f1))
    {
        return Err(Error::Mismatch("trivialization of p o F failed".into()));
    }
    let pi0c = complex.pi0();
    let (target, _) = f.pi0_map().cokernel();
    let n = b.a0().gens();
    let iso = GroupHom::new(&pi0c, &target, IntMatrix::identity(n))?;
    let inv = GroupHom::new(&target, &pi0c, IntMatrix::identity(n))?;
    if !inv.after(&iso).same_map(&GroupHom::identity(&pi0c)) || !iso.after(&inv).same_map(&GroupHom::identity(&target)) {
        return Err(Error::Mismatch("pi0 comparison is not an isomorphism".into()));
    }
    Ok(CokerData { complex, projection, trivialization: h, pi0_iso: iso, pi0_inv: inv, pi0_target: target })
}

/// `[functions with divisor supported in sigma -> Z^sigma]` on `P1` over `F_q`, with `pi0 = Z` and `pi1 = F_q^*`.
pub fn truncated_ch1(field: &BaseField, sigma: &[ClosedPoint]) -> Result<TwoTermComplex> {
    let q = field.size().ok_or_else(|| Error::Unsupported("truncated model over QQ".into()))?;
    let n = sigma.len();
    let finite: Vec<usize> = (0..n).filter(|&i| !sigma[i].is_infinity()).collect();
    let inf = (0..n).find(|&i| sigma[i].is_infinity());
    // Exponent vectors on the finite points of sigma that are divisors of functions.
    let lattice = match inf {
        Some(_) => IntMatrix::identity(finite.len()),
        None => {
            let degs: Vec<i64> = finite.iter().map(|&i| sigma[i].degree() as i64).collect();
            integer_kernel(&IntMatrix::from_rows(1, finite.len(), &degs))
        }
    };
    let k = lattice.cols();
    let mut d = IntMatrix::zeros(n, 1 + k);
    for c in 0..k {
        let mut deg = BigInt::from(0);
        for (r, &i) in finite.iter().enumerate() {
            let e = lattice.get(r, c).clone();
            deg += &e * BigInt::from(sigma[i].degree() as i64);
            d.set(i, 1 + c, e);
        }
        if let Some(j) = inf {
            d.set(j, 1 + c, -deg);
        }
    }
    let mut rels = IntMatrix::zeros(1 + k, 1);
    rels.set(0, 0, BigInt::from(q as i64 - 1));
    let a1 = FGAbelianGroup::new(rels);
    Ok(TwoTermComplex::new(GroupHom::new(&a1, &FGAbelianGroup::free(n), d)?))
}

fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, bound: i64, rng: &mut R) -> IntMatrix {
    let e: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-bound..=bound)).collect();
    IntMatrix::from_rows(rows, cols, &e)
}

/// A chain map between complexes of ranks at most `max_rank` with random entries bounded by `bound`.
/// `B0` may carry diagonal torsion; `f-1` is completed through a random unimodular block so that `d_B f-1 = f0 d_A`.
pub fn random_chain_map<R: Rng + ?Sized>(max_rank: usize, bound: i64, rng: &mut R) -> ChainMap {
    let na1 = rng.gen_range(0..=max_rank);
    let na0 = rng.gen_range(0..=max_rank);
    let nb0 = rng.gen_range(0..=max_rank);
    let extra = rng.gen_range(0..=max_rank.saturating_sub(na1));
    let a = TwoTermComplex::new(
        GroupHom::new(&FGAbelianGroup::free(na1), &FGAbelianGroup::free(na0), random_matrix(na0, na1, bound, rng))
            .expect("free"),
    );
    let tors: Vec<i64> = (0..nb0).map(|_| if rng.gen_bool(0.4) { rng.gen_range(2..=bound.max(2)) } else { 0 }).collect();
    let mut rb0 = IntMatrix::zeros(nb0, nb0);
    for (i, t) in tors.iter().enumerate() {
        rb0.set(i, i, BigInt::from(*t));
    }
    let b0 = FGAbelianGroup::new(rb0);
    let f0 = GroupHom::new(a.a0(), &b0, random_matrix(nb0, na0, bound, rng)).expect("free source");
    // B-1 = Z^(na1 + extra), f-1 = [U; Q], d_B = [X | Y] with X U + Y Q = f0 d_A.
    let u = random_unimodular(na1, rng);
    let q = random_matrix(extra, na1, bound, rng);
    let y = random_matrix(nb0, extra, bound, rng);
    let target = f0.matrix().mul(a.d.matrix()).add(&y.mul(&q).neg());
    let x = target.mul(&unimodular_inverse(&u));
    let b1 = FGAbelianGroup::free(na1 + extra);
    let b = TwoTermComplex::new(GroupHom::new(&b1, &b0, x.hcat(&y)).expect("free source"));
    let f1 = GroupHom::new(a.a1(), &b1, u.vcat(&q)).expect("free source");
    ChainMap::new(&a, &b, f1, f0).expect("chain map by construction")
}

fn random_unimodular<R: Rng + ?Sized>(n: usize, rng: &mut R) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for _ in 0..n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let k = BigInt::from(rng.gen_range(-1i64..=1));
        for r in 0..n {
            let v = m.get(r, j) + &k * m.get(r, i);
            m.set(r, j, v);
        }
    }
    m
}

fn unimodular_inverse(u: &IntMatrix) -> IntMatrix {
    let n = u.rows();
    let cols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut e = alloc::vec![BigInt::from(0); n];
            e[j] = BigInt::from(1);
            crate::algebra::snf::solve_integer(u, &e).expect("unimodular")
        })
        .collect();
    IntMatrix::from_columns(n, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pi_examples() {
        let c = TwoTermComplex::free(1, 1, &[2]);
        assert_eq!(c.pi0().render(), "Z/2");
        assert!(c.pi1().is_trivial());
        let c = TwoTermComplex::free(0, 1, &[]);
        assert_eq!(c.pi0().render(), "Z");
        let c = TwoTermComplex::free(1, 1, &[0]);
        assert_eq!((c.pi0().render(), c.pi1().render()), ("Z".into(), "Z".into()));
    }

    #[test]
    fn coker_examples() {
        let c = TwoTermComplex::free(0, 1, &[]);
        let two = GroupHom::from_rows(c.a0(), c.a0(), &[2]).unwrap();
        let f = ChainMap::new(&c, &c, GroupHom::identity(c.a1()), two).unwrap();
        assert_eq!(coker_functor(&f).unwrap().complex.pi0().render(), "Z/2");
        let d = TwoTermComplex::free(2, 1, &[1, 3]);
        let co = coker_functor(&ChainMap::identity(&d)).unwrap();
        assert!(co.complex.pi0().is_trivial());
    }

    #[test]
    fn truncated_model() {
        let k = BaseField::gf_q(5).unwrap();
        let pts = [ClosedPoint::rational(&k.zero()), ClosedPoint::rational(&k.one()), ClosedPoint::Infinity];
        let c = truncated_ch1(&k, &pts).unwrap();
        assert_eq!(c.pi0().render(), "Z");
        assert_eq!(c.pi1().render(), "Z/4");
        let c = truncated_ch1(&k, &pts[..2]).unwrap();
        assert_eq!(c.pi0().render(), "Z");
    }

    #[test]
    fn rejects_non_chain_maps() {
        let a = TwoTermComplex::free(1, 1, &[1]);
        let b = TwoTermComplex::free(1, 1, &[2]);
        let r = ChainMap::new(&a, &b, GroupHom::identity(a.a1()), GroupHom::identity(a.a0()));
        assert!(matches!(r, Err(Error::NotChainMap)));
    }

    #[test]
    fn random_maps_are_chain_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let f = random_chain_map(3, 4, &mut rng);
            let co = coker_functor(&f).unwrap();
            assert!(co.complex.pi0().isomorphic(&co.pi0_target));
        }
    }
}
