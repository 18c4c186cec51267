//! Finitely presented abelian groups `Z^n / R Z^k` and homomorphisms between them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::snf::{fmt_invariants, integer_kernel, smith_normal_form, solve_integer, IntMatrix};
use crate::{Error, Result};

/// `Z^gens` modulo the column span of `rels`.
#[derive(Clone)]
pub struct FGAbelianGroup {
    rels: IntMatrix,
    // U with U R V diagonal, its inverse, and the diagonal padded to `gens`.
    u: IntMatrix,
    uinv: IntMatrix,
    diag: Vec<BigInt>,
}

impl FGAbelianGroup {
    pub fn new(rels: IntMatrix) -> Self {
        let n = rels.rows();
        let s = smith_normal_form(&rels);
        let mut diag = s.diagonal();
        diag.resize(n, BigInt::zero());
        let cols: Vec<Vec<BigInt>> = (0..n)
            .map(|j| {
                let mut e = vec![BigInt::zero(); n];
                e[j] = BigInt::one();
                solve_integer(&s.u, &e).expect("unimodular")
            })
            .collect();
        let uinv = IntMatrix::from_columns(n, &cols);
        FGAbelianGroup { rels, u: s.u, uinv, diag }
    }

    pub fn free(n: usize) -> Self {
        Self::new(IntMatrix::zeros(n, 0))
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(IntMatrix::from_rows(1, 1, &[n as i64]))
    }

    /// `Z/d1 + ... + Z/dk + Z^free`.
    pub fn from_invariants(torsion: &[u64], free: usize) -> Self {
        let n = torsion.len() + free;
        let mut r = IntMatrix::zeros(n, torsion.len());
        for (i, d) in torsion.iter().enumerate() {
            r.set(i, i, BigInt::from(*d));
        }
        Self::new(r)
    }

    /// Names like `0`, `Z`, `Z4`, `Z2xZ2`, `Z2+Z3`.
    pub fn parse_name(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut torsion = Vec::new();
        let mut free = 0;
        for part in s.split(['x', '+', '⊕']) {
            let part = part.trim();
            let body = part.strip_prefix('Z').ok_or_else(|| Error::Invalid(format!("bad group {s:?}")))?;
            let body = body.strip_prefix("/").unwrap_or(body);
            if body.is_empty() {
                free += 1;
            } else {
                let d: u64 = body.parse().map_err(|_| Error::Invalid(format!("bad group {s:?}")))?;
                if d == 0 {
                    free += 1;
                } else {
                    torsion.push(d);
                }
            }
        }
        Ok(Self::from_invariants(&torsion, free))
    }

    pub fn gens(&self) -> usize {
        self.rels.rows()
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.rels
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        Self::new(self.rels.block_diag(&o.rels))
    }

    /// Nontrivial invariant factors and the free rank.
    pub fn invariants(&self) -> (Vec<BigInt>, usize) {
        let torsion = self.diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect();
        let free = self.diag.iter().filter(|d| d.is_zero()).count();
        (torsion, free)
    }

    /// Moduli of the canonical coordinates, `0` for a free coordinate.
    pub fn moduli(&self) -> Vec<BigInt> {
        let (mut t, free) = self.invariants();
        t.extend((0..free).map(|_| BigInt::zero()));
        t
    }

    fn kept(&self) -> impl Iterator<Item = usize> + '_ {
        let tors = (0..self.gens()).filter(|&i| !self.diag[i].is_zero() && !self.diag[i].is_one());
        let free = (0..self.gens()).filter(|&i| self.diag[i].is_zero());
        tors.chain(free)
    }

    pub fn is_trivial(&self) -> bool {
        self.kept().next().is_none()
    }

    pub fn is_finite(&self) -> bool {
        self.invariants().1 == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        let (t, free) = self.invariants();
        (free == 0).then(|| t.iter().product())
    }

    pub fn isomorphic(&self, o: &Self) -> bool {
        self.invariants() == o.invariants()
    }

    /// Coordinates in `Z/d1 + ... + Z^free`, torsion entries reduced to `[0, d)`.
    pub fn canonical(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.u.mul_vec(x);
        self.kept()
            .map(|i| if self.diag[i].is_zero() { y[i].clone() } else { y[i].mod_floor(&self.diag[i]) })
            .collect()
    }

    /// A representative in generator coordinates for canonical coordinates.
    pub fn lift(&self, c: &[BigInt]) -> Vec<BigInt> {
        let mut y = vec![BigInt::zero(); self.gens()];
        for (i, v) in self.kept().zip(c) {
            y[i] = v.clone();
        }
        self.uinv.mul_vec(&y)
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        self.canonical(x).iter().all(|v| v.is_zero())
    }

    pub fn elem_eq(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        let d: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero(&d)
    }

    pub fn basis(&self, j: usize) -> Vec<BigInt> {
        let mut e = vec![BigInt::zero(); self.gens()];
        e[j] = BigInt::one();
        e
    }

    /// Every element of a finite group, as canonical coordinates in mixed radix order.
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        let m = self.moduli();
        if m.iter().any(|d| d.is_zero()) {
            return None;
        }
        let mut out = vec![Vec::new()];
        for d in m.iter().rev() {
            let d = d.to_u64()?;
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for v in 0..d {
                for tail in &out {
                    let mut e = vec![BigInt::from(v)];
                    e.extend(tail.iter().cloned());
                    next.push(e);
                }
            }
            out = next;
        }
        Some(out)
    }

    /// Canonical presentation `Z^c / diag(d)` with the isomorphisms to and from it.
    pub fn simplify(&self) -> (FGAbelianGroup, GroupHom, GroupHom) {
        let m = self.moduli();
        let c = m.len();
        let mut r = IntMatrix::zeros(c, 0);
        let tors: Vec<Vec<BigInt>> = m
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut col = vec![BigInt::zero(); c];
                col[i] = d.clone();
                col
            })
            .collect();
        if !tors.is_empty() {
            r = IntMatrix::from_columns(c, &tors);
        }
        let simple = FGAbelianGroup::new(r);
        let kept: Vec<usize> = self.kept().collect();
        let mut to = IntMatrix::zeros(c, self.gens());
        let mut from = IntMatrix::zeros(self.gens(), c);
        for (k, &i) in kept.iter().enumerate() {
            for j in 0..self.gens() {
                to.set(k, j, self.u.get(i, j).clone());
                from.set(j, k, self.uinv.get(j, i).clone());
            }
        }
        let to = GroupHom::new(self, &simple, to).expect("canonical coordinates");
        let from = GroupHom::new(&simple, self, from).expect("canonical coordinates");
        (simple, to, from)
    }

    pub fn render(&self) -> String {
        let (t, free) = self.invariants();
        fmt_invariants(&t, free)
    }
}

impl PartialEq for FGAbelianGroup {
    fn eq(&self, o: &Self) -> bool {
        self.rels == o.rels
    }
}

impl fmt::Debug for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A homomorphism given on generators; column `j` is the image of generator `j`.
#[derive(Clone, Debug)]
pub struct GroupHom {
    src: FGAbelianGroup,
    dst: FGAbelianGroup,
    m: IntMatrix,
}

impl GroupHom {
    /// Checks that relations of `src` map to zero in `dst`.
    pub fn new(src: &FGAbelianGroup, dst: &FGAbelianGroup, m: IntMatrix) -> Result<Self> {
        if m.rows() != dst.gens() || m.cols() != src.gens() {
            return Err(Error::Invalid(format!(
                "{}x{} matrix for a map Z^{} -> Z^{}",
                m.rows(),
                m.cols(),
                src.gens(),
                dst.gens()
            )));
        }
        let img = m.mul(src.relations());
        for c in img.columns() {
            if !dst.is_zero(&c) {
                return Err(Error::Invalid("homomorphism does not respect relations".into()));
            }
        }
        Ok(GroupHom { src: src.clone(), dst: dst.clone(), m })
    }

    pub fn from_rows(src: &FGAbelianGroup, dst: &FGAbelianGroup, entries: &[i64]) -> Result<Self> {
        Self::new(src, dst, IntMatrix::from_rows(dst.gens(), src.gens(), entries))
    }

    pub fn zero(src: &FGAbelianGroup, dst: &FGAbelianGroup) -> Self {
        GroupHom { src: src.clone(), dst: dst.clone(), m: IntMatrix::zeros(dst.gens(), src.gens()) }
    }

    pub fn identity(g: &FGAbelianGroup) -> Self {
        GroupHom { src: g.clone(), dst: g.clone(), m: IntMatrix::identity(g.gens()) }
    }

    pub fn src(&self) -> &FGAbelianGroup {
        &self.src
    }

    pub fn dst(&self) -> &FGAbelianGroup {
        &self.dst
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.m.mul_vec(x)
    }

    /// `self o g`.
    pub fn after(&self, g: &GroupHom) -> GroupHom {
        GroupHom { src: g.src.clone(), dst: self.dst.clone(), m: self.m.mul(&g.m) }
    }

    pub fn add(&self, o: &GroupHom) -> GroupHom {
        GroupHom { src: self.src.clone(), dst: self.dst.clone(), m: self.m.add(&o.m) }
    }

    pub fn neg(&self) -> GroupHom {
        GroupHom { src: self.src.clone(), dst: self.dst.clone(), m: self.m.neg() }
    }

    /// Equality as maps: agreement on every generator.
    pub fn same_map(&self, o: &GroupHom) -> bool {
        let d = self.m.add(&o.m.neg());
        d.columns().iter().all(|c| self.dst.is_zero(c))
    }

    pub fn is_zero(&self) -> bool {
        self.m.columns().iter().all(|c| self.dst.is_zero(c))
    }

    /// Some `x` with `f(x) = y`.
    pub fn preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let a = self.m.hcat(self.dst.relations());
        let x = solve_integer(&a, y)?;
        Some(x[..self.src.gens()].to_vec())
    }

    /// The kernel with its inclusion.
    pub fn kernel(&self) -> (FGAbelianGroup, GroupHom) {
        let n = self.src.gens();
        let k = integer_kernel(&self.m.hcat(self.dst.relations()));
        let gens = k.row_block(0, n);
        let r = gens.cols();
        let rels = integer_kernel(&gens.hcat(self.src.relations())).row_block(0, r);
        let kg = FGAbelianGroup::new(rels);
        let incl = GroupHom { src: kg.clone(), dst: self.src.clone(), m: gens };
        (kg, incl)
    }

    /// The cokernel with its projection.
    pub fn cokernel(&self) -> (FGAbelianGroup, GroupHom) {
        let c = FGAbelianGroup::new(self.dst.relations().hcat(&self.m));
        let proj = GroupHom { src: self.dst.clone(), dst: c.clone(), m: IntMatrix::identity(self.dst.gens()) };
        (c, proj)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// The matrix in canonical coordinates on both sides.
    pub fn canonical_matrix(&self) -> Vec<Vec<BigInt>> {
        let k = self.src.moduli().len();
        (0..k)
            .map(|j| {
                let mut e = vec![BigInt::zero(); k];
                e[j] = BigInt::one();
                self.dst.canonical(&self.apply(&self.src.lift(&e)))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn canonical_forms() {
        let g = FGAbelianGroup::new(IntMatrix::from_rows(2, 2, &[2, 0, 0, 3]));
        assert_eq!(g.render(), "Z/6");
        assert_eq!(g.order(), Some(BigInt::from(6)));
        let x = big(&[1, 1]);
        let c = g.canonical(&x);
        assert!(g.elem_eq(&g.lift(&c), &x));
        assert_eq!(g.elements().unwrap().len(), 6);
        let h = FGAbelianGroup::new(IntMatrix::from_rows(3, 2, &[2, 4, 6, 8, 0, 0]));
        assert_eq!(h.invariants(), (vec![BigInt::from(2), BigInt::from(4)], 1));
        assert!(FGAbelianGroup::parse_name("Z2xZ2").unwrap().isomorphic(&FGAbelianGroup::from_invariants(&[2, 2], 0)));
        assert!(FGAbelianGroup::parse_name("0").unwrap().is_trivial());
    }

    #[test]
    fn kernel_cokernel() {
        let z = FGAbelianGroup::free(1);
        let two = GroupHom::from_rows(&z, &z, &[2]).unwrap();
        assert_eq!(two.cokernel().0.render(), "Z/2");
        assert!(two.kernel().0.is_trivial());
        let z4 = FGAbelianGroup::cyclic(4);
        let m = GroupHom::from_rows(&z4, &z4, &[2]).unwrap();
        assert_eq!(m.kernel().0.render(), "Z/2");
        assert_eq!(m.cokernel().0.render(), "Z/2");
        assert!(GroupHom::from_rows(&FGAbelianGroup::cyclic(3), &z4, &[1]).is_err());
    }

    #[test]
    fn simplify_roundtrip() {
        let g = FGAbelianGroup::new(IntMatrix::from_rows(3, 2, &[2, 4, 6, 8, 0, 0]));
        let (s, to, from) = g.simplify();
        assert!(s.isomorphic(&g));
        assert!(from.after(&to).same_map(&GroupHom::identity(&g)));
        assert!(to.after(&from).same_map(&GroupHom::identity(&s)));
    }
}
