//! Butterflies `A-1 -> E <- B-1`, `E -> A0`, `E -> B0`: additive functors between Picard categories.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::complex::{ChainMap, TwoTermComplex};
use super::group::{FGAbelianGroup, GroupHom};
use crate::algebra::snf::{solve_integer, IntMatrix};
use crate::{Error, Result};

/// `kappa: A-1 -> E`, `iota: B-1 -> E`, `rho: E -> A0`, `sigma: E -> B0` with
/// `rho kappa = d_A`, `sigma iota = d_B`, `sigma kappa = 0` and `0 -> B-1 -> E -> A0 -> 0` exact.
#[derive(Clone, Debug)]
pub struct Butterfly {
    a: TwoTermComplex,
    b: TwoTermComplex,
    kappa: GroupHom,
    iota: GroupHom,
    rho: GroupHom,
    sigma: GroupHom,
}

fn same_complex(x: &TwoTermComplex, y: &TwoTermComplex) -> bool {
    x.a1() == y.a1() && x.a0() == y.a0() && x.d().matrix() == y.d().matrix()
}

fn fail(msg: &str) -> Error {
    Error::Mismatch(msg.into())
}

impl Butterfly {
    pub fn new(
        a: &TwoTermComplex,
        b: &TwoTermComplex,
        kappa: GroupHom,
        iota: GroupHom,
        rho: GroupHom,
        sigma: GroupHom,
    ) -> Result<Self> {
        let e = kappa.dst();
        if kappa.src() != a.a1() || iota.src() != b.a1() || rho.dst() != a.a0() || sigma.dst() != b.a0() {
            return Err(fail("butterfly wings do not match the complexes"));
        }
        if iota.dst() != e || rho.src() != e || sigma.src() != e {
            return Err(fail("butterfly wings disagree on the middle group"));
        }
        if !rho.after(&kappa).same_map(a.d()) || !sigma.after(&iota).same_map(b.d()) {
            return Err(fail("wings do not commute"));
        }
        if !sigma.after(&kappa).is_zero() || !rho.after(&iota).is_zero() {
            return Err(fail("diagonals are not complexes"));
        }
        if !iota.is_injective() || !rho.is_surjective() {
            return Err(fail("B-1 -> E -> A0 is not a short exact sequence"));
        }
        let (k, incl) = rho.kernel();
        for j in 0..k.gens() {
            if iota.preimage(&incl.apply(&k.basis(j))).is_none() {
                return Err(fail("ker rho is larger than im iota"));
            }
        }
        Ok(Butterfly { a: a.clone(), b: b.clone(), kappa, iota, rho, sigma })
    }

    /// `E = B-1 + A0`, `kappa = (-f-1, d_A)`, `iota = (1, 0)`, `rho = pr`, `sigma = (d_B, f0)`.
    pub fn from_chain_map(f: &ChainMap) -> Result<Self> {
        let (a, b) = (f.src(), f.dst());
        let e = b.a1().direct_sum(a.a0());
        let (nb1, na0) = (b.a1().gens(), a.a0().gens());
        let kappa = GroupHom::new(a.a1(), &e, f.f1().matrix().neg().vcat(a.d().matrix()))?;
        let iota = GroupHom::new(b.a1(), &e, IntMatrix::identity(nb1).vcat(&IntMatrix::zeros(na0, nb1)))?;
        let rho = GroupHom::new(&e, a.a0(), IntMatrix::zeros(na0, nb1).hcat(&IntMatrix::identity(na0)))?;
        let sigma = GroupHom::new(&e, b.a0(), b.d().matrix().hcat(f.f0().matrix()))?;
        Self::new(a, b, kappa, iota, rho, sigma)
    }

    pub fn identity(c: &TwoTermComplex) -> Self {
        Self::from_chain_map(&ChainMap::identity(c)).expect("identity butterfly")
    }

    pub fn zero(a: &TwoTermComplex, b: &TwoTermComplex) -> Self {
        let f = ChainMap::new(a, b, GroupHom::zero(a.a1(), b.a1()), GroupHom::zero(a.a0(), b.a0())).expect("zero map");
        Self::from_chain_map(&f).expect("zero butterfly")
    }

    pub fn src(&self) -> &TwoTermComplex {
        &self.a
    }

    pub fn dst(&self) -> &TwoTermComplex {
        &self.b
    }

    pub fn middle(&self) -> &FGAbelianGroup {
        self.kappa.dst()
    }

    pub fn kappa(&self) -> &GroupHom {
        &self.kappa
    }

    pub fn iota(&self) -> &GroupHom {
        &self.iota
    }

    pub fn rho(&self) -> &GroupHom {
        &self.rho
    }

    pub fn sigma(&self) -> &GroupHom {
        &self.sigma
    }

    /// Lift through `rho`, then apply `sigma`.
    pub fn pi0_map(&self) -> GroupHom {
        let (pa, pb) = (self.a.pi0(), self.b.pi0());
        let cols: Vec<Vec<BigInt>> = (0..self.a.a0().gens())
            .map(|j| self.sigma.apply(&self.rho.preimage(&self.a.a0().basis(j)).expect("rho is onto")))
            .collect();
        GroupHom::new(&pa, &pb, IntMatrix::from_columns(pb.gens(), &cols)).expect("well defined on pi0")
    }

    /// On `ker d_A`, `kappa` lands in `ker rho = im iota`; `alpha -> -iota^-1 kappa alpha`.
    pub fn pi1_map(&self) -> GroupHom {
        let (ka, ia) = self.a.d().kernel();
        let (kb, ib) = self.b.d().kernel();
        let cols: Vec<Vec<BigInt>> = (0..ka.gens())
            .map(|j| {
                let e = self.kappa.apply(&ia.apply(&ka.basis(j)));
                let b1: Vec<BigInt> = self.iota.preimage(&e).expect("exactness").iter().map(|x| -x).collect();
                ib.preimage(&b1).expect("lands in ker d_B")
            })
            .collect();
        GroupHom::new(&ka, &kb, IntMatrix::from_columns(kb.gens(), &cols)).expect("well defined on pi1")
    }

    /// Re-present `E` in its canonical coordinates.
    pub fn simplified(&self) -> Self {
        let (_, to, from) = self.middle().simplify();
        Butterfly {
            a: self.a.clone(),
            b: self.b.clone(),
            kappa: to.after(&self.kappa),
            iota: to.after(&self.iota),
            rho: self.rho.after(&from),
            sigma: self.sigma.after(&from),
        }
    }

    /// Concatenation: `self: A -> B` followed by `next: B -> C`.
    /// The middle group is `E1 x_(B0) E2` modulo `B-1` embedded as `(iota1, kappa2)`.
    pub fn compose(&self, next: &Butterfly) -> Result<Butterfly> {
        if !same_complex(&self.b, &next.a) {
            return Err(fail("butterflies are not composable"));
        }
        let (e1, e2) = (self.middle(), next.middle());
        let glue: Vec<Vec<BigInt>> = (0..self.b.a1().gens())
            .map(|j| {
                let b = self.b.a1().basis(j);
                concat(&self.iota.apply(&b), &next.kappa.apply(&b))
            })
            .collect();
        let fq = FibreQuotient::new(e1, &self.sigma, e2, &next.rho, &glue)?;
        let a1 = self.a.a1();
        let c1 = next.b.a1();
        let kappa = fq.hom_into(a1, |j| concat(&self.kappa.apply(&a1.basis(j)), &vec_zero(e2.gens())))?;
        let iota = fq.hom_into(c1, |j| concat(&vec_zero(e1.gens()), &next.iota.apply(&c1.basis(j))))?;
        let rho = fq.hom_out(self.a.a0(), &self.rho.matrix().hcat(&IntMatrix::zeros(self.a.a0().gens(), e2.gens())))?;
        let sigma = fq.hom_out(next.b.a0(), &IntMatrix::zeros(next.b.a0().gens(), e1.gens()).hcat(next.sigma.matrix()))?;
        Ok(Butterfly::new(&self.a, &next.b, kappa, iota, rho, sigma)?.simplified())
    }

    /// `E1 x_(A0) E2` modulo `(iota1 b, -iota2 b)`.
    pub fn baer_sum(&self, o: &Butterfly) -> Result<Butterfly> {
        if !same_complex(&self.a, &o.a) || !same_complex(&self.b, &o.b) {
            return Err(fail("Baer sum needs butterflies between the same complexes"));
        }
        let (e1, e2) = (self.middle(), o.middle());
        let b1 = self.b.a1();
        let glue: Vec<Vec<BigInt>> = (0..b1.gens())
            .map(|j| {
                let b = b1.basis(j);
                let neg: Vec<BigInt> = o.iota.apply(&b).iter().map(|x| -x).collect();
                concat(&self.iota.apply(&b), &neg)
            })
            .collect();
        let fq = FibreQuotient::new(e1, &self.rho, e2, &o.rho, &glue)?;
        let a1 = self.a.a1();
        let kappa = fq.hom_into(a1, |j| {
            let a = a1.basis(j);
            concat(&self.kappa.apply(&a), &o.kappa.apply(&a))
        })?;
        let iota = fq.hom_into(b1, |j| concat(&self.iota.apply(&b1.basis(j)), &vec_zero(e2.gens())))?;
        let rho = fq.hom_out(self.a.a0(), &self.rho.matrix().hcat(&IntMatrix::zeros(self.a.a0().gens(), e2.gens())))?;
        let sigma = fq.hom_out(self.b.a0(), &self.sigma.matrix().hcat(o.sigma.matrix()))?;
        Ok(Butterfly::new(&self.a, &self.b, kappa, iota, rho, sigma)?.simplified())
    }

    /// `(E, kappa, -iota, rho, -sigma)`.
    pub fn inverse(&self) -> Butterfly {
        Butterfly {
            a: self.a.clone(),
            b: self.b.clone(),
            kappa: self.kappa.clone(),
            iota: self.iota.neg(),
            rho: self.rho.clone(),
            sigma: self.sigma.neg(),
        }
    }

    /// An isomorphism `phi: E -> E'` commuting with all four wings, found by solving the linear system over `Z`.
    pub fn iso_to(&self, o: &Butterfly) -> Option<GroupHom> {
        if !same_complex(&self.a, &o.a) || !same_complex(&self.b, &o.b) {
            return None;
        }
        let (e1, e2) = (self.middle(), o.middle());
        let id1 = IntMatrix::identity(e1.gens());
        let cons = [
            Constraint { left: IntMatrix::identity(e2.gens()), right: self.kappa.matrix().clone(), value: o.kappa.matrix().clone(), target: e2 },
            Constraint { left: IntMatrix::identity(e2.gens()), right: self.iota.matrix().clone(), value: o.iota.matrix().clone(), target: e2 },
            Constraint { left: o.rho.matrix().clone(), right: id1.clone(), value: self.rho.matrix().clone(), target: self.a.a0() },
            Constraint { left: o.sigma.matrix().clone(), right: id1, value: self.sigma.matrix().clone(), target: self.b.a0() },
        ];
        let phi = solve_hom(e1, e2, &cons)?;
        let phi = GroupHom::new(e1, e2, phi).ok()?;
        let ok = phi.after(&self.kappa).same_map(&o.kappa)
            && phi.after(&self.iota).same_map(&o.iota)
            && o.rho.after(&phi).same_map(&self.rho)
            && o.sigma.after(&phi).same_map(&self.sigma)
            && phi.is_iso();
        ok.then_some(phi)
    }
}

fn vec_zero(n: usize) -> Vec<BigInt> {
    alloc::vec![BigInt::zero(); n]
}

fn concat(x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    x.iter().chain(y).cloned().collect()
}

/// The kernel `K` of `(m1, -m2): E1 + E2 -> X`, modulo the given vectors of `E1 + E2`.
struct FibreQuotient {
    sum: FGAbelianGroup,
    incl: IntMatrix,
    q: FGAbelianGroup,
}

impl FibreQuotient {
    fn new(e1: &FGAbelianGroup, m1: &GroupHom, e2: &FGAbelianGroup, m2: &GroupHom, glue: &[Vec<BigInt>]) -> Result<Self> {
        let sum = e1.direct_sum(e2);
        let diff = GroupHom::new(&sum, m1.dst(), m1.matrix().hcat(&m2.matrix().neg()))?;
        let (k, incl) = diff.kernel();
        let mut fq = FibreQuotient { sum, incl: incl.matrix().clone(), q: k.clone() };
        let mut rels = k.relations().clone();
        for v in glue {
            let y = fq.express(v)?;
            rels = rels.hcat(&IntMatrix::from_columns(k.gens(), &[y]));
        }
        fq.q = FGAbelianGroup::new(rels);
        Ok(fq)
    }

    /// Coordinates in the generators of `K` of an element of `E1 + E2` lying in `K`.
    fn express(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let a = self.incl.hcat(self.sum.relations());
        let x = solve_integer(&a, v).ok_or_else(|| fail("element is not in the fibre product"))?;
        Ok(x[..self.incl.cols()].to_vec())
    }

    fn hom_into(&self, src: &FGAbelianGroup, image: impl Fn(usize) -> Vec<BigInt>) -> Result<GroupHom> {
        let cols: Vec<Vec<BigInt>> = (0..src.gens()).map(|j| self.express(&image(j))).collect::<Result<_>>()?;
        GroupHom::new(src, &self.q, IntMatrix::from_columns(self.q.gens(), &cols))
    }

    /// A map out of the quotient given by a matrix on `E1 + E2`.
    fn hom_out(&self, dst: &FGAbelianGroup, m: &IntMatrix) -> Result<GroupHom> {
        GroupHom::new(&self.q, dst, m.mul(&self.incl))
    }
}

struct Constraint<'a> {
    left: IntMatrix,
    right: IntMatrix,
    value: IntMatrix,
    target: &'a FGAbelianGroup,
}

/// An integer matrix `Phi` with `Phi` respecting relations and `left Phi right = value` modulo each target's relations.
fn solve_hom(src: &FGAbelianGroup, dst: &FGAbelianGroup, cons: &[Constraint<'_>]) -> Option<IntMatrix> {
    let (nd, ns) = (dst.gens(), src.gens());
    let mut all: Vec<Constraint<'_>> = alloc::vec![Constraint {
        left: IntMatrix::identity(nd),
        right: src.relations().clone(),
        value: IntMatrix::zeros(nd, src.relations().cols()),
        target: dst,
    }];
    all.extend(cons.iter().map(|c| Constraint {
        left: c.left.clone(),
        right: c.right.clone(),
        value: c.value.clone(),
        target: c.target,
    }));
    let nphi = nd * ns;
    let nrows: usize = all.iter().map(|c| c.target.gens() * c.right.cols()).sum();
    let nvars: usize = nphi + all.iter().map(|c| c.target.relations().cols() * c.right.cols()).sum::<usize>();
    let mut a = IntMatrix::zeros(nrows, nvars);
    let mut b = alloc::vec![BigInt::zero(); nrows];
    let (mut row0, mut var0) = (0, nphi);
    for c in &all {
        let (nt, nc, nk) = (c.target.gens(), c.right.cols(), c.target.relations().cols());
        for r in 0..nt {
            for col in 0..nc {
                let row = row0 + r * nc + col;
                for i in 0..nd {
                    let l = c.left.get(r, i);
                    if l.is_zero() {
                        continue;
                    }
                    for j in 0..ns {
                        let p = c.right.get(j, col);
                        if !p.is_zero() {
                            let v = a.get(row, i * ns + j) + l * p;
                            a.set(row, i * ns + j, v);
                        }
                    }
                }
                for k in 0..nk {
                    a.set(row, var0 + k * nc + col, -c.target.relations().get(r, k));
                }
                b[row] = c.value.get(r, col).clone();
            }
        }
        row0 += nt * nc;
        var0 += nk * nc;
    }
    let x = solve_integer(&a, &b)?;
    let mut phi = IntMatrix::zeros(nd, ns);
    for i in 0..nd {
        for j in 0..ns {
            phi.set(i, j, x[i * ns + j].clone());
        }
    }
    Some(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::complex::random_chain_map;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mul_by(c: &TwoTermComplex, n: i64) -> Butterfly {
        let f1 = GroupHom::from_rows(c.a1(), c.a1(), &[n]).unwrap();
        let f0 = GroupHom::from_rows(c.a0(), c.a0(), &[n]).unwrap();
        Butterfly::from_chain_map(&ChainMap::new(c, c, f1, f0).unwrap()).unwrap()
    }

    #[test]
    fn identity_and_products() {
        let z = TwoTermComplex::new(GroupHom::zero(&FGAbelianGroup::free(1), &FGAbelianGroup::free(1)));
        let (two, three) = (mul_by(&z, 2), mul_by(&z, 3));
        let id = Butterfly::identity(&z);
        assert!(id.compose(&two).unwrap().iso_to(&two).is_some());
        assert!(two.compose(&id).unwrap().iso_to(&two).is_some());
        let six = two.compose(&three).unwrap();
        assert!(six.iso_to(&mul_by(&z, 6)).is_some());
        assert!(six.iso_to(&mul_by(&z, 5)).is_none());
        let p = six.pi0_map();
        assert_eq!(p.canonical_matrix(), vec![vec![BigInt::from(6)]]);
    }

    #[test]
    fn baer_inverse_is_trivial() {
        let c = TwoTermComplex::free(1, 1, &[2]);
        let b = mul_by(&c, 3);
        let s = b.baer_sum(&b.inverse()).unwrap();
        assert!(s.pi0_map().is_zero() && s.pi1_map().is_zero());
        assert!(s.iso_to(&Butterfly::zero(&c, &c)).is_some());
        let t = b.baer_sum(&b).unwrap();
        assert!(t.iso_to(&mul_by(&c, 6)).is_some());
    }

    #[test]
    fn random_compose_and_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let f = random_chain_map(2, 3, &mut rng);
            let b = Butterfly::from_chain_map(&f).unwrap();
            let ida = Butterfly::identity(f.src());
            assert!(ida.compose(&b).unwrap().iso_to(&b).is_some());
            let s = b.baer_sum(&Butterfly::zero(f.src(), f.dst())).unwrap();
            assert!(s.iso_to(&b).is_some());
            assert!(b.pi0_map().same_map(&f.pi0_map()));
            assert!(b.pi1_map().same_map(&f.pi1_map()));
        }
    }
}
