//! Heisenberg groups `H_(A,B)`: the central extension of `A x B` by `A (x) B` with
//! `(a, b, t)(a', b', t') = (a + a', b + b', t + t' + a (x) b')`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::group::FGAbelianGroup;
use crate::algebra::snf::IntMatrix;
use crate::{Error, Result};

/// A finite product of cyclic groups `Z/m1 x ... x Z/mk`, elements indexed in mixed radix (first coordinate most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fin {
    moduli: Vec<u64>,
    size: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
}

impl Fin {
    pub fn new(moduli: Vec<u64>) -> Self {
        let size = moduli.iter().product::<u64>() as usize;
        let mut f = Fin { moduli, size, add: Vec::new(), neg: Vec::new() };
        let coords: Vec<Vec<u64>> = (0..size).map(|i| f.coords(i)).collect();
        f.add = (0..size * size)
            .map(|k| {
                let (x, y) = (&coords[k / size], &coords[k % size]);
                let s: Vec<u64> = x.iter().zip(y).zip(&f.moduli).map(|((a, b), m)| (a + b) % m).collect();
                f.index(&s) as u32
            })
            .collect();
        f.neg = (0..size)
            .map(|i| {
                let s: Vec<u64> = coords[i].iter().zip(&f.moduli).map(|(a, m)| (m - a) % m).collect();
                f.index(&s) as u32
            })
            .collect();
        f
    }

    /// The canonical coordinates of a finite group.
    pub fn of_group(g: &FGAbelianGroup) -> Result<Self> {
        let m = g.moduli();
        let m: Option<Vec<u64>> = m.iter().map(|d| d.to_u64().filter(|&d| d > 0)).collect();
        Ok(Self::new(m.ok_or_else(|| Error::Invalid(format!("{g} is not finite")))?))
    }

    pub fn product(&self, o: &Fin) -> Fin {
        let mut m = self.moduli.clone();
        m.extend_from_slice(&o.moduli);
        Fin::new(m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn coords(&self, mut i: usize) -> Vec<u64> {
        let mut out = vec![0; self.moduli.len()];
        for (k, m) in self.moduli.iter().enumerate().rev() {
            out[k] = (i as u64) % m;
            i /= *m as usize;
        }
        out
    }

    pub fn index(&self, c: &[u64]) -> usize {
        c.iter().zip(&self.moduli).fold(0usize, |acc, (x, m)| acc * *m as usize + (x % m) as usize)
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.size + y] as usize
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x] as usize
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    pub fn generators(&self) -> Vec<(usize, u64)> {
        (0..self.moduli.len())
            .map(|k| {
                let mut c = vec![0; self.moduli.len()];
                c[k] = 1;
                (self.index(&c), self.moduli[k])
            })
            .collect()
    }

    pub fn render(&self, i: usize) -> String {
        let c = self.coords(i);
        match c.len() {
            0 => "0".into(),
            1 => format!("{}", c[0]),
            _ => format!("({})", c.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(",")),
        }
    }
}

impl FGAbelianGroup {
    /// `A (x) B` presented on generator pairs with relations `R_A (x) I + I (x) R_B`.
    pub fn tensor(&self, o: &FGAbelianGroup) -> FGAbelianGroup {
        let (na, nb) = (self.gens(), o.gens());
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for r in self.relations().columns() {
            for j in 0..nb {
                let mut v = vec![BigInt::from(0); na * nb];
                for i in 0..na {
                    v[i * nb + j] = r[i].clone();
                }
                cols.push(v);
            }
        }
        for s in o.relations().columns() {
            for i in 0..na {
                let mut v = vec![BigInt::from(0); na * nb];
                for j in 0..nb {
                    v[i * nb + j] = s[j].clone();
                }
                cols.push(v);
            }
        }
        FGAbelianGroup::new(if cols.is_empty() { IntMatrix::zeros(na * nb, 0) } else { IntMatrix::from_columns(na * nb, &cols) })
    }
}

/// `Q x T` with `(q, t)(q', t') = (q + q', t + t' + f(q, q'))` for a normalized 2-cocycle `f`.
#[derive(Clone, Debug)]
pub struct CentralExtension {
    q: Fin,
    t: Fin,
    f: Vec<u32>,
}

impl CentralExtension {
    pub fn new(q: Fin, t: Fin, f: Vec<u32>) -> Result<Self> {
        if f.len() != q.size() * q.size() {
            return Err(Error::Invalid("cocycle table has the wrong size".into()));
        }
        Ok(CentralExtension { q, t, f })
    }

    pub fn quotient(&self) -> &Fin {
        &self.q
    }

    pub fn kernel(&self) -> &Fin {
        &self.t
    }

    pub fn order(&self) -> usize {
        self.q.size() * self.t.size()
    }

    pub fn cocycle(&self, x: usize, y: usize) -> usize {
        self.f[x * self.q.size() + y] as usize
    }

    pub fn elem(&self, q: usize, t: usize) -> usize {
        q * self.t.size() + t
    }

    pub fn split(&self, x: usize) -> (usize, usize) {
        (x / self.t.size(), x % self.t.size())
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        let (q, t) = self.split(x);
        let (q2, t2) = self.split(y);
        let tt = self.t.add(self.t.add(t, t2), self.cocycle(q, q2));
        self.elem(self.q.add(q, q2), tt)
    }

    pub fn identity(&self) -> usize {
        self.elem(0, 0)
    }

    pub fn inv(&self, x: usize) -> usize {
        let (q, t) = self.split(x);
        let nq = self.q.neg(q);
        // (q, t)(-q, s) = (0, t + s + f(q, -q)) = 0.
        let s = self.t.neg(self.t.add(t, self.cocycle(q, nq)));
        self.elem(nq, s)
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (0..n).all(|y| {
            let xy = self.mul(x, y);
            (0..n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
        }))
    }

    pub fn has_identity_and_inverses(&self) -> bool {
        let e = self.identity();
        (0..self.order()).all(|x| self.mul(e, x) == x && self.mul(x, e) == x && self.mul(x, self.inv(x)) == e)
    }

    /// The image of `T` commutes with everything.
    pub fn kernel_is_central(&self) -> bool {
        (0..self.t.size()).all(|t| {
            let z = self.elem(0, t);
            (0..self.order()).all(|x| self.mul(z, x) == self.mul(x, z))
        })
    }

    /// The projection to `Q` is a homomorphism with kernel exactly `T`.
    pub fn quotient_is_base(&self) -> bool {
        let n = self.order();
        let hom = (0..n).all(|x| (0..n).all(|y| self.split(self.mul(x, y)).0 == self.q.add(self.split(x).0, self.split(y).0)));
        let ker = (0..n).filter(|&x| self.split(x).0 == 0).count();
        hom && ker == self.t.size()
    }

    /// `s(x) s(y) s(x + y)^-1` for the section `s(q) = (q, 0)`.
    pub fn extracted_cocycle(&self, x: usize, y: usize) -> usize {
        let s = |q: usize| self.elem(q, 0);
        let v = self.mul(self.mul(s(x), s(y)), self.inv(s(self.q.add(x, y))));
        let (q, t) = self.split(v);
        debug_assert_eq!(q, 0);
        t
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (0..n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn center_order(&self) -> usize {
        let n = self.order();
        (0..n).filter(|&x| (0..n).all(|y| self.mul(x, y) == self.mul(y, x))).count()
    }

    /// Order of the subgroup generated by all commutators.
    pub fn commutator_subgroup_order(&self) -> usize {
        let n = self.order();
        let mut gens = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let c = self.mul(self.mul(x, y), self.inv(self.mul(y, x)));
                gens.push(c);
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.closure(&gens).len()
    }

    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut queue = VecDeque::from([self.identity()]);
        seen[self.identity()] = true;
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&x| seen[x]).collect()
    }

    /// Pullback along `phi: Q' -> Q`, given as a table.
    pub fn pullback(&self, q2: &Fin, phi: &[usize]) -> CentralExtension {
        let n = q2.size();
        let f = (0..n * n).map(|k| self.cocycle(phi[k / n], phi[k % n]) as u32).collect();
        CentralExtension { q: q2.clone(), t: self.t.clone(), f }
    }

    /// Baer sum of two extensions of the same `Q` by the same `T`.
    pub fn baer_sum(&self, o: &CentralExtension) -> Result<CentralExtension> {
        if self.q != o.q || self.t != o.t {
            return Err(Error::Mismatch("Baer sum of extensions with different ends".into()));
        }
        let f = self.f.iter().zip(&o.f).map(|(a, b)| self.t.add(*a as usize, *b as usize) as u32).collect();
        Ok(CentralExtension { q: self.q.clone(), t: self.t.clone(), f })
    }
}

#[derive(Clone, Debug)]
pub struct HeisenbergGroup {
    pub a: Fin,
    pub b: Fin,
    pub tensor: FGAbelianGroup,
    pub ext: CentralExtension,
    // a (x) b as an index into the tensor product, by (a, b).
    table: Vec<u32>,
}

pub fn heisenberg(a: &FGAbelianGroup, b: &FGAbelianGroup) -> Result<HeisenbergGroup> {
    let (fa, fb) = (Fin::of_group(a)?, Fin::of_group(b)?);
    let tensor = a.tensor(b);
    let ft = Fin::of_group(&tensor)?;
    let mut table = vec![0u32; fa.size() * fb.size()];
    for i in 0..fa.size() {
        let x = a.lift(&to_big(&fa.coords(i)));
        for j in 0..fb.size() {
            let y = b.lift(&to_big(&fb.coords(j)));
            let v: Vec<BigInt> = x.iter().flat_map(|u| y.iter().map(move |w| u * w)).collect();
            let c: Vec<u64> = tensor.canonical(&v).iter().map(|z| z.to_u64().expect("reduced")).collect();
            table[i * fb.size() + j] = ft.index(&c) as u32;
        }
    }
    let q = fa.product(&fb);
    let n = q.size();
    let nb = fb.size();
    let f = (0..n * n).map(|k| table[(k / n / nb) * nb + (k % n) % nb]).collect();
    let ext = CentralExtension::new(q, ft, f)?;
    Ok(HeisenbergGroup { a: fa, b: fb, tensor, ext, table })
}

fn to_big(c: &[u64]) -> Vec<BigInt> {
    c.iter().map(|&x| BigInt::from(x)).collect()
}

impl HeisenbergGroup {
    /// `a (x) b` as an index of the tensor product.
    pub fn tensor_of(&self, a: usize, b: usize) -> usize {
        self.table[a * self.b.size() + b] as usize
    }

    pub fn elem(&self, a: usize, b: usize, t: usize) -> usize {
        self.ext.elem(a * self.b.size() + b, t)
    }

    pub fn parts(&self, x: usize) -> (usize, usize, usize) {
        let (q, t) = self.ext.split(x);
        (q / self.b.size(), q % self.b.size(), t)
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.ext.mul(x, y)
    }

    pub fn order(&self) -> usize {
        self.ext.order()
    }

    /// The extracted cocycle equals `(a, b, a', b') -> a (x) b'` everywhere.
    pub fn cocycle_matches(&self) -> bool {
        let (na, nb) = (self.a.size(), self.b.size());
        let n = na * nb;
        (0..n).all(|x| (0..n).all(|y| self.ext.extracted_cocycle(x, y) == self.tensor_of(x / nb, y % nb)))
    }

    pub fn render(&self, x: usize) -> String {
        let (a, b, t) = self.parts(x);
        let ft = self.ext.kernel();
        format!("({},{},{})", self.a.render(a), self.b.render(b), ft.render(t))
    }
}

/// `phi(q, t) = (q, t + c(q))` from `(+_A)^* H` to `p1^* H + p2^* H` over `A x A x B`.
#[derive(Clone, Debug)]
pub struct BiadditivityWitness {
    pub base: Fin,
    pub lhs: CentralExtension,
    pub rhs: CentralExtension,
    pub correction: Vec<usize>,
    pub pairs_checked: usize,
}

impl BiadditivityWitness {
    pub fn apply(&self, x: usize) -> usize {
        let (q, t) = self.lhs.split(x);
        self.rhs.elem(q, self.rhs.kernel().add(t, self.correction[q]))
    }

    /// Homomorphism on every pair, bijective, over the identity of `A x A x B` and of `A (x) B`.
    pub fn verify(&self) -> bool {
        let n = self.lhs.order();
        let mut hit = vec![false; n];
        for x in 0..n {
            let y = self.apply(x);
            if self.lhs.split(x).0 != self.rhs.split(y).0 || hit[y] {
                return false;
            }
            hit[y] = true;
        }
        let t = self.lhs.kernel();
        if (0..t.size()).any(|s| self.apply(self.lhs.elem(0, s)) != self.rhs.elem(0, s)) {
            return false;
        }
        (0..n).all(|x| (0..n).all(|y| self.apply(self.lhs.mul(x, y)) == self.rhs.mul(self.apply(x), self.apply(y))))
    }
}

/// Searches generator by generator for a correction `c` making `phi` a homomorphism, then verifies it on all pairs.
pub fn biadditivity_witness(a: &FGAbelianGroup, b: &FGAbelianGroup) -> Result<BiadditivityWitness> {
    let h = heisenberg(a, b)?;
    let (fa, fb) = (&h.a, &h.b);
    let base = fa.product(fa).product(fb);
    let na = fa.size();
    let nb = fb.size();
    let idx = |x: usize| (x / (na * nb), (x / nb) % na, x % nb);
    let qh = |a: usize, b: usize| a * nb + b;
    let plus: Vec<usize> = (0..base.size()).map(|x| { let (a1, a2, b) = idx(x); qh(fa.add(a1, a2), b) }).collect();
    let p1: Vec<usize> = (0..base.size()).map(|x| { let (a1, _, b) = idx(x); qh(a1, b) }).collect();
    let p2: Vec<usize> = (0..base.size()).map(|x| { let (_, a2, b) = idx(x); qh(a2, b) }).collect();
    let lhs = h.ext.pullback(&base, &plus);
    let rhs = h.ext.pullback(&base, &p1).baer_sum(&h.ext.pullback(&base, &p2))?;
    let t = lhs.kernel().clone();
    let gens = base.generators();
    // c(x + g) = c(x) + c(g) + f_rhs(x, g) - f_lhs(x, g)
    let step = |c: usize, cg: usize, x: usize, g: usize| t.sub(t.add(t.add(c, cg), rhs.cocycle(x, g)), lhs.cocycle(x, g));
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&(g, ord)| {
            (0..t.size())
                .filter(|&cg| {
                    let (mut x, mut c) = (0, 0);
                    for _ in 0..ord {
                        c = step(c, cg, x, g);
                        x = base.add(x, g);
                    }
                    c == 0
                })
                .collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return Err(Error::SearchFailed(format!("no correction for {} and {}", a, b)));
    }
    let mut choice = vec![0usize; gens.len()];
    loop {
        let cg: Vec<usize> = choice.iter().zip(&candidates).map(|(i, c)| c[*i]).collect();
        if let Some(correction) = extend(&base, &gens, &cg, &step) {
            let w = BiadditivityWitness { base: base.clone(), lhs: lhs.clone(), rhs: rhs.clone(), correction, pairs_checked: 0 };
            if w.verify() {
                let n = w.lhs.order();
                return Ok(BiadditivityWitness { pairs_checked: n * n, ..w });
            }
        }
        // Next choice in lexicographic order.
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Err(Error::SearchFailed(format!("no witness for {} and {}", a, b)));
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn extend(base: &Fin, gens: &[(usize, u64)], cg: &[usize], step: &impl Fn(usize, usize, usize, usize) -> usize) -> Option<Vec<usize>> {
    let mut c: Vec<Option<usize>> = vec![None; base.size()];
    c[0] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let cx = c[x].expect("visited");
        for (k, &(g, _)) in gens.iter().enumerate() {
            let y = base.add(x, g);
            let v = step(cx, cg[k], x, g);
            match c[y] {
                None => {
                    c[y] = Some(v);
                    queue.push_back(y);
                }
                Some(w) if w != v => return None,
                _ => {}
            }
        }
    }
    c.into_iter().collect()
}
