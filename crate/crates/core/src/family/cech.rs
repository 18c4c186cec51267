//! Cech cocycles on `P1 x B` for a product cover, and the cup-product and boundary symbol cocycles.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::forms::{FamilyDivisor, FormFunction, FormLetter};
use crate::algebra::bihom::{factor_form, BiForm, X0, X1, Y0, Y1};
use crate::algebra::BaseField;
use crate::symbols::SymbolSum;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FamilyBase {
    P1,
    A1,
}

/// Product cover `{p_i != 0} x {q_alpha != 0}` of `P1 x B`, with `p_i` forms in `x` and `q_alpha` forms in `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XCover {
    base: FamilyBase,
    xs: Vec<BiForm>,
    ys: Vec<BiForm>,
    x_factors: Vec<Vec<(BiForm, u32)>>,
    y_factors: Vec<Vec<(BiForm, u32)>>,
}

fn irreducible_parts(f: &BiForm) -> Result<Vec<(BiForm, u32)>> {
    Ok(factor_form(f)?.factors.into_keys().map(|g| {
        let (a, b) = g.bidegree();
        let d = a + b;
        (g, d)
    }).collect())
}

impl XCover {
    pub fn new(base: FamilyBase, xs: Vec<BiForm>, ys: Vec<BiForm>) -> Result<Self> {
        if xs.is_empty() || ys.is_empty() {
            return Err(Error::InvalidCover("empty cover".into()));
        }
        for p in &xs {
            if p.bidegree().1 != 0 || p.bidegree().0 == 0 {
                return Err(Error::InvalidCover(format!("{} is not a form in x", p.render())));
            }
        }
        for q in &ys {
            if q.bidegree().0 != 0 || q.bidegree().1 == 0 {
                return Err(Error::InvalidCover(format!("{} is not a form in y", q.render())));
            }
        }
        let x_factors: Vec<_> = xs.iter().map(irreducible_parts).collect::<Result<_>>()?;
        let y_factors: Vec<_> = ys.iter().map(irreducible_parts).collect::<Result<_>>()?;
        let field = xs[0].field();
        let common = |fs: &[Vec<(BiForm, u32)>], ignore: Option<&BiForm>| -> Option<BiForm> {
            let mut it = fs.iter().map(|v| v.iter().map(|(g, _)| g.clone()).collect::<BTreeSet<_>>());
            let first = it.next()?;
            let inter = it.fold(first, |acc, s| acc.intersection(&s).cloned().collect());
            inter.into_iter().find(|g| Some(g) != ignore)
        };
        if let Some(g) = common(&x_factors, None) {
            return Err(Error::InvalidCover(format!("every chart misses {}", g.render())));
        }
        let y1 = BiForm::var(Y1, &field.one());
        let ignore = (base == FamilyBase::A1).then_some(&y1);
        if let Some(g) = common(&y_factors, ignore) {
            return Err(Error::InvalidCover(format!("every chart misses {}", g.render())));
        }
        Ok(XCover { base, xs, ys, x_factors, y_factors })
    }

    /// `{x0, x1} x {y0, y1}` over `P1`, `{x0, x1} x {y1}` over `A1`.
    pub fn standard(field: &BaseField, base: FamilyBase) -> Self {
        let one = field.one();
        let xs = vec![BiForm::var(X0, &one), BiForm::var(X1, &one)];
        let ys = match base {
            FamilyBase::P1 => vec![BiForm::var(Y0, &one), BiForm::var(Y1, &one)],
            FamilyBase::A1 => vec![BiForm::var(Y1, &one)],
        };
        Self::new(base, xs, ys).expect("standard cover")
    }

    pub fn base(&self) -> FamilyBase {
        self.base
    }

    pub fn len(&self) -> usize {
        self.xs.len() * self.ys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn split(&self, i: usize) -> (usize, usize) {
        (i / self.ys.len(), i % self.ys.len())
    }

    pub fn label(&self, i: usize) -> String {
        let (a, b) = self.split(i);
        format!("U{i}[{} != 0, {} != 0]", self.xs[a].render(), self.ys[b].render())
    }

    /// Irreducible forms whose zero loci make up the complement of chart `i`.
    pub fn excluded(&self, i: usize) -> BTreeSet<BiForm> {
        let (a, b) = self.split(i);
        let mut s: BTreeSet<BiForm> = self.x_factors[a].iter().map(|(g, _)| g.clone()).collect();
        s.extend(self.y_factors[b].iter().map(|(g, _)| g.clone()));
        if self.base == FamilyBase::A1 {
            s.insert(BiForm::var(Y1, &self.xs[0].field().one()));
        }
        s
    }

    /// A product of the given factors of total degree `n`, if one exists.
    fn trivializer(parts: &[(BiForm, u32)], n: i64, field: &BaseField) -> Option<FormFunction> {
        let m = n.unsigned_abs() as usize;
        // Smallest-index reachable decomposition, by dynamic programming over degrees.
        let mut via: Vec<Option<usize>> = vec![None; m + 1];
        let mut reach = vec![false; m + 1];
        reach[0] = true;
        for s in 1..=m {
            for (k, (_, d)) in parts.iter().enumerate() {
                let d = *d as usize;
                if d <= s && reach[s - d] {
                    reach[s] = true;
                    via[s] = Some(k);
                    break;
                }
            }
        }
        if !reach[m] {
            return None;
        }
        let mut exps: BTreeMap<BiForm, i64> = BTreeMap::new();
        let mut s = m;
        while s > 0 {
            let k = via[s].expect("reachable");
            *exps.entry(parts[k].0.clone()).or_insert(0) += 1;
            s -= parts[k].1 as usize;
        }
        let t = FormFunction::from_factors(field, exps);
        Some(if n < 0 { t.inv() } else { t })
    }

    /// `F / (T_x T_y)` with trivializers of the bidegree of `d` built from the excluded forms of chart `i`.
    pub fn local_equation(&self, d: &FamilyDivisor, i: usize) -> Result<FormFunction> {
        let (xa, yb) = self.split(i);
        let (a, b) = d.bidegree();
        let field = d.field();
        let tx = Self::trivializer(&self.x_factors[xa], a, field).ok_or_else(|| Error::NotPrincipal(self.label(i)))?;
        let mut yparts = self.y_factors[yb].clone();
        if self.base == FamilyBase::A1 && !yparts.iter().any(|(g, _)| g.bidegree() == (0, 1) && *g == BiForm::var(Y1, &field.one())) {
            yparts.push((BiForm::var(Y1, &field.one()), 1));
        }
        let ty = Self::trivializer(&yparts, b, field).ok_or_else(|| Error::NotPrincipal(self.label(i)))?;
        Ok(d.function().div(&tx).div(&ty))
    }
}

/// `a_ij = f_i / f_j` for local equations `f_i` of a divisor.
#[derive(Clone, Debug)]
pub struct LineBundleCocycle {
    cover: XCover,
    divisor: FamilyDivisor,
    local: Vec<FormFunction>,
}

pub fn cocycle_of_divisor(d: &FamilyDivisor, cover: &XCover) -> Result<LineBundleCocycle> {
    let local = (0..cover.len()).map(|i| cover.local_equation(d, i)).collect::<Result<Vec<_>>>()?;
    Ok(LineBundleCocycle { cover: cover.clone(), divisor: d.clone(), local })
}

impl LineBundleCocycle {
    pub fn cover(&self) -> &XCover {
        &self.cover
    }

    pub fn divisor(&self) -> &FamilyDivisor {
        &self.divisor
    }

    pub fn local(&self, i: usize) -> &FormFunction {
        &self.local[i]
    }

    pub fn get(&self, i: usize, j: usize) -> FormFunction {
        self.local[i].div(&self.local[j])
    }

    /// Each `a_ij` is a unit on `U_i & U_j`, and `a_ij a_jk = a_ik`.
    pub fn check(&self) -> Result<()> {
        let n = self.cover.len();
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                let mut allowed = self.cover.excluded(i);
                allowed.extend(self.cover.excluded(j));
                if let Some(g) = a.factors().keys().find(|g| !allowed.contains(*g)) {
                    return Err(Error::Mismatch(format!(
                        "a_{i}{j} vanishes along {} inside the overlap",
                        g.render()
                    )));
                }
                for k in 0..n {
                    if a.mul(&self.get(j, k)) != self.get(i, k) {
                        return Err(Error::Mismatch(format!("cocycle law fails at ({i}, {j}, {k})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_trivial(&self) -> bool {
        let n = self.cover.len();
        (0..n).all(|i| (0..n).all(|j| self.get(i, j).is_one()))
    }
}

/// A 2-cochain `(i, j, k) -> SymbolSum` on a cover with `n` charts, stored densely over a letter table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolCocycle {
    field: BaseField,
    n: usize,
    letters: Vec<FormLetter>,
    data: Vec<i64>,
}

impl SymbolCocycle {
    pub fn zero(field: &BaseField, n: usize) -> Self {
        Self::with_letters(field, n, vec![FormLetter::Const])
    }

    fn with_letters(field: &BaseField, n: usize, letters: Vec<FormLetter>) -> Self {
        debug_assert_eq!(letters.first(), Some(&FormLetter::Const));
        let l = letters.len();
        SymbolCocycle { field: field.clone(), n, letters, data: vec![0; n * n * n * l * l] }
    }

    fn torsion(&self) -> i64 {
        self.field.size().expect("finite") as i64 - 1
    }

    fn cell(&self, i: usize, j: usize, k: usize) -> usize {
        let l = self.letters.len();
        ((i * self.n + j) * self.n + k) * l * l
    }

    fn normalize(&mut self) {
        let l = self.letters.len();
        let m = self.torsion();
        for c in self.data.chunks_mut(l * l) {
            for x in 0..l {
                c[x] = c[x].rem_euclid(m);
                c[x * l] = c[x * l].rem_euclid(m);
            }
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> SymbolSum<FormLetter> {
        let l = self.letters.len();
        let base = self.cell(i, j, k);
        let mut s = SymbolSum::zero(&self.field);
        for x in 0..l {
            for y in 0..l {
                let c = self.data[base + x * l + y];
                if c != 0 {
                    s.bump((self.letters[x].clone(), self.letters[y].clone()), c);
                }
            }
        }
        s
    }

    /// Nonzero entries.
    pub fn entries(&self) -> BTreeMap<(usize, usize, usize), SymbolSum<FormLetter>> {
        let mut out = BTreeMap::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    let s = self.get(i, j, k);
                    if !s.is_zero() {
                        out.insert((i, j, k), s);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    fn remap(&self, letters: &[FormLetter]) -> Self {
        if letters == self.letters.as_slice() {
            return self.clone();
        }
        let pos: Vec<usize> = self.letters.iter().map(|a| letters.binary_search(a).expect("superset")).collect();
        let (l, m) = (self.letters.len(), letters.len());
        let mut out = Self::with_letters(&self.field, self.n, letters.to_vec());
        for c in 0..self.n * self.n * self.n {
            for x in 0..l {
                for y in 0..l {
                    out.data[c * m * m + pos[x] * m + pos[y]] = self.data[c * l * l + x * l + y];
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "cocycles on different covers");
        let mut letters: Vec<FormLetter> = self.letters.clone();
        letters.extend(o.letters.iter().cloned());
        letters.sort();
        letters.dedup();
        let mut a = self.remap(&letters);
        let b = o.remap(&letters);
        for (x, y) in a.data.iter_mut().zip(&b.data) {
            *x += y;
        }
        a.normalize();
        a
    }

    pub fn neg(&self) -> Self {
        let mut a = self.clone();
        for x in a.data.iter_mut() {
            *x = -*x;
        }
        a.normalize();
        a
    }

    /// `c_jkl - c_ikl + c_ijl - c_ijk = 0` on every 4-tuple.
    pub fn is_cocycle(&self) -> bool {
        let n = self.n;
        let l2 = self.letters.len() * self.letters.len();
        let m = self.torsion();
        let l = self.letters.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for q in 0..n {
                        let (a, b, c, d) = (self.cell(j, k, q), self.cell(i, k, q), self.cell(i, j, q), self.cell(i, j, k));
                        for t in 0..l2 {
                            let v = self.data[a + t] - self.data[b + t] + self.data[c + t] - self.data[d + t];
                            let torsion = t < l || t % l == 0;
                            if (torsion && v.rem_euclid(m) != 0) || (!torsion && v != 0) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

type Expansions = Vec<Vec<Vec<(FormLetter, i64)>>>;

struct Table {
    letters: Vec<FormLetter>,
}

impl Table {
    fn new(exps: &[&Expansions]) -> Self {
        let mut set = BTreeSet::new();
        set.insert(FormLetter::Const);
        for e in exps {
            for row in e.iter() {
                for v in row {
                    set.extend(v.iter().map(|(a, _)| a.clone()));
                }
            }
        }
        Table { letters: set.into_iter().collect() }
    }

    fn dense(&self, v: &[(FormLetter, i64)]) -> Vec<i64> {
        let mut out = vec![0; self.letters.len()];
        for (a, e) in v {
            out[self.letters.binary_search(a).expect("letter in table")] += e;
        }
        out
    }
}

fn expansions(c: &LineBundleCocycle) -> Result<Expansions> {
    let n = c.cover.len();
    (0..n).map(|i| (0..n).map(|j| c.get(i, j).letters()).collect()).collect()
}

fn outer(u: &[i64], v: &[i64], out: &mut [i64], sign: i64) {
    let l = v.len();
    for (x, a) in u.iter().enumerate() {
        if *a == 0 {
            continue;
        }
        for (y, b) in v.iter().enumerate() {
            out[x * l + y] += sign * a * b;
        }
    }
}

/// `(i, j, k) -> {a_ij, b_jk}`.
pub fn cup_cocycle(a: &LineBundleCocycle, b: &LineBundleCocycle) -> Result<SymbolCocycle> {
    if a.cover != b.cover {
        return Err(Error::CoverMismatch);
    }
    let field = a.divisor.field();
    let n = a.cover.len();
    let ea = expansions(a)?;
    let eb = expansions(b)?;
    let table = Table::new(&[&ea, &eb]);
    let da: Vec<Vec<Vec<i64>>> = ea.iter().map(|r| r.iter().map(|v| table.dense(v)).collect()).collect();
    let db: Vec<Vec<Vec<i64>>> = eb.iter().map(|r| r.iter().map(|v| table.dense(v)).collect()).collect();
    let mut out = SymbolCocycle::with_letters(field, n, table.letters.clone());
    let l2 = table.letters.len() * table.letters.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = out.cell(i, j, k);
                outer(&da[i][j], &db[j][k], &mut out.data[c..c + l2], 1);
            }
        }
    }
    out.normalize();
    Ok(out)
}

/// The coboundary of `t_ij = {f_i, b_ij}`, with `f_i` local equations of `d`.
pub fn lambda_boundary(d: &FamilyDivisor, b: &LineBundleCocycle) -> Result<SymbolCocycle> {
    if let Some(g) = d.shares_component(&b.divisor) {
        return Err(Error::CommonComponent(g.render()));
    }
    let field = d.field();
    let n = b.cover.len();
    let f: Vec<Vec<(FormLetter, i64)>> =
        (0..n).map(|i| b.cover.local_equation(d, i)?.letters()).collect::<Result<_>>()?;
    let eb = expansions(b)?;
    let ef = vec![f];
    let table = Table::new(&[&ef, &eb]);
    let df: Vec<Vec<i64>> = ef[0].iter().map(|v| table.dense(v)).collect();
    let db: Vec<Vec<Vec<i64>>> = eb.iter().map(|r| r.iter().map(|v| table.dense(v)).collect()).collect();
    let l2 = table.letters.len() * table.letters.len();
    let mut t = vec![0i64; n * n * l2];
    for i in 0..n {
        for j in 0..n {
            let c = (i * n + j) * l2;
            outer(&df[i], &db[i][j], &mut t[c..c + l2], 1);
        }
    }
    let mut out = SymbolCocycle::with_letters(field, n, table.letters.clone());
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = out.cell(i, j, k);
                let (jk, ik, ij) = ((j * n + k) * l2, (i * n + k) * l2, (i * n + j) * l2);
                for x in 0..l2 {
                    out.data[c + x] = t[jk + x] - t[ik + x] + t[ij + x];
                }
            }
        }
    }
    out.normalize();
    Ok(out)
}
