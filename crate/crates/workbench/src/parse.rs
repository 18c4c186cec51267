//! Text grammar for functions in `t`, divisors on the line, and forms in `x0, x1, y0, y1`.
//!
//! An input may end with a field tag, `over GF(9)`, `over GF(3^2)` or `over QQ`.
//! Inside `GF(p^k)` with `k > 1` the letter `a` is the class of the generator.

use std::fmt;

use deligne_core::algebra::bihom::{BiForm, NAMES};
use deligne_core::algebra::mpoly::MPoly;
use deligne_core::algebra::{BaseField, FPoly, Fe, Field, Ring};
use deligne_core::curve::{ClosedPoint, Divisor, FactoredFunction};
use deligne_core::family::FamilyDivisor;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Option<usize>,
    pub msg: String,
}

impl ParseError {
    fn at(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos: Some(pos), msg: msg.into() }
    }

    fn plain(msg: impl Into<String>) -> Self {
        ParseError { pos: None, msg: msg.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pos {
            Some(p) => write!(f, "column {}: {}", p + 1, self.msg),
            None => f.write_str(&self.msg),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<deligne_core::Error> for ParseError {
    fn from(e: deligne_core::Error) -> Self {
        ParseError::plain(e.to_string())
    }
}

pub type PResult<T> = std::result::Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    End,
}

fn lex(s: &str, offset: usize) -> PResult<Vec<(Tok, usize)>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        let pos = offset + i;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(s[st..i].parse().expect("digits")), pos));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(s[st..i].into()), pos));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), pos));
            i += 1;
        } else {
            let ch = s[i..].chars().next().expect("char boundary");
            return Err(ParseError::at(pos, format!("unexpected character `{ch}`")));
        }
    }
    out.push((Tok::End, offset + s.len()));
    Ok(out)
}

#[derive(Clone, Debug)]
enum Kind {
    Num(BigInt),
    Var(String),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, i64),
    Group(Box<Node>),
}

#[derive(Clone, Debug)]
struct Node {
    kind: Kind,
    pos: usize,
}

const VARS: [&str; 7] = ["t", "a", "inf", "x0", "x1", "y0", "y1"];

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        match self.peek() {
            Tok::Op(d) if *d == c => {
                self.bump();
                Ok(())
            }
            _ => Err(ParseError::at(self.pos(), format!("expected `{c}`"))),
        }
    }

    fn expr(&mut self) -> PResult<Node> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos();
            let kind = match self.peek() {
                Tok::Op('+') => Kind::Add as fn(Box<Node>, Box<Node>) -> Kind,
                Tok::Op('-') => Kind::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Node { kind: kind(Box::new(lhs), Box::new(rhs)), pos };
        }
    }

    fn term(&mut self) -> PResult<Node> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.pos();
            let kind = match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    Kind::Mul as fn(Box<Node>, Box<Node>) -> Kind
                }
                Tok::Op('/') => {
                    self.bump();
                    Kind::Div
                }
                // juxtaposition: `2t`, `(t-1)(t+1)`
                Tok::Num(_) | Tok::Ident(_) | Tok::Op('(') => Kind::Mul,
                _ => return Ok(lhs),
            };
            let rhs = self.unary()?;
            lhs = Node { kind: kind(Box::new(lhs), Box::new(rhs)), pos };
        }
    }

    fn unary(&mut self) -> PResult<Node> {
        let pos = self.pos();
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(Node { kind: Kind::Neg(Box::new(self.unary()?)), pos })
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<Node> {
        let base = self.atom()?;
        if self.peek() != &Tok::Op('^') {
            return Ok(base);
        }
        let pos = self.pos();
        self.bump();
        let e = self.exponent()?;
        Ok(Node { kind: Kind::Pow(Box::new(base), e), pos })
    }

    fn exponent(&mut self) -> PResult<i64> {
        let pos = self.pos();
        let paren = self.peek() == &Tok::Op('(');
        if paren {
            self.bump();
        }
        let neg = self.peek() == &Tok::Op('-');
        if neg {
            self.bump();
        }
        let n = match self.bump() {
            (Tok::Num(n), p) => n.to_i64().filter(|v| *v <= 4096).ok_or_else(|| ParseError::at(p, "exponent too large"))?,
            _ => return Err(ParseError::at(pos, "expected an integer exponent")),
        };
        if paren {
            self.expect(')')?;
        }
        Ok(if neg { -n } else { n })
    }

    fn atom(&mut self) -> PResult<Node> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Num(n) => Ok(Node { kind: Kind::Num(n), pos }),
            Tok::Ident(s) => {
                if !VARS.contains(&s.as_str()) {
                    return Err(ParseError::at(pos, format!("unknown name `{s}`")));
                }
                Ok(Node { kind: Kind::Var(s), pos })
            }
            Tok::Op('(') => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(Node { kind: Kind::Group(Box::new(inner)), pos })
            }
            Tok::End => Err(ParseError::at(pos, "unexpected end of input")),
            Tok::Op(c) => Err(ParseError::at(pos, format!("unexpected `{c}`"))),
        }
    }
}

fn parse_ast(s: &str, offset: usize) -> PResult<Node> {
    let mut p = Parser { toks: lex(s, offset)?, i: 0 };
    if p.peek() == &Tok::End {
        return Err(ParseError::at(p.pos(), "empty expression"));
    }
    let n = p.expr()?;
    match p.peek() {
        Tok::End => Ok(n),
        Tok::Op(')') => Err(ParseError::at(p.pos(), "unbalanced `)`")),
        _ => Err(ParseError::at(p.pos(), "unexpected token")),
    }
}

/// `GF(q)`, `GF(p^k)`, `QQ` or `Q`.
pub fn parse_field(s: &str) -> PResult<BaseField> {
    parse_field_at(s, 0)
}

fn parse_field_at(s: &str, offset: usize) -> PResult<BaseField> {
    let lead = s.len() - s.trim_start().len();
    let t = s.trim();
    let pos = offset + lead;
    if t == "QQ" || t == "Q" {
        return Ok(BaseField::Rational);
    }
    let inner = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| ParseError::at(pos, format!("unknown field `{t}`; expected GF(q) or QQ")))?;
    let bad = || ParseError::at(pos + 3, format!("bad field size `{inner}`"));
    let q = match inner.split_once('^') {
        Some((p, k)) => {
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            let k: u32 = k.trim().parse().map_err(|_| bad())?;
            p.checked_pow(k).ok_or_else(bad)?
        }
        None => inner.trim().parse().map_err(|_| bad())?,
    };
    BaseField::gf_q(q).map_err(|e| ParseError::at(pos + 3, e.to_string()))
}

/// Splits off a trailing `over <field>` tag; the body keeps its original offsets.
pub fn split_tag(s: &str) -> PResult<(&str, Option<BaseField>)> {
    let bytes = s.as_bytes();
    let mut cut = None;
    for (i, _) in s.match_indices("over") {
        let before = i == 0 || bytes[i - 1].is_ascii_whitespace();
        let after = bytes.get(i + 4).is_none_or(|c| c.is_ascii_whitespace());
        if before && after {
            cut = Some(i);
        }
    }
    match cut {
        Some(i) => Ok((&s[..i], Some(parse_field_at(&s[i + 4..], i + 4)?))),
        None => Ok((s, None)),
    }
}

fn resolve(s: &str, field: Option<&BaseField>) -> PResult<(usize, BaseField)> {
    let (body, tag) = split_tag(s)?;
    let k = match (tag, field) {
        (Some(t), Some(f)) if t != *f => {
            return Err(ParseError::plain(format!("field mismatch: {} against {}", t.name(), f.name())))
        }
        (Some(t), _) => t,
        (None, Some(f)) => f.clone(),
        (None, None) => return Err(ParseError::at(s.len(), "missing field; append `over GF(q)` or `over QQ`")),
    };
    Ok((body.len(), k))
}

fn scalar(k: &BaseField, n: &Node) -> PResult<Fe> {
    match &n.kind {
        Kind::Num(v) => Ok(k.from_rational(v, &BigInt::one())?),
        Kind::Var(v) if v == "a" => k
            .gen_a()
            .ok_or_else(|| ParseError::at(n.pos, format!("`a` is not defined over {}", k.name()))),
        _ => unreachable!("scalar leaf"),
    }
}

fn fpoly_const(c: Fe) -> FPoly {
    FPoly::constant(c)
}

/// Evaluates to `num / den` in `k(t)`.
fn eval_t(k: &BaseField, n: &Node) -> PResult<(FPoly, FPoly)> {
    let one = || fpoly_const(k.one());
    Ok(match &n.kind {
        Kind::Num(_) => (fpoly_const(scalar(k, n)?), one()),
        Kind::Var(v) => match v.as_str() {
            "t" => (FPoly::x(&k.one()), one()),
            "a" => (fpoly_const(scalar(k, n)?), one()),
            other => return Err(ParseError::at(n.pos, format!("`{other}` is not allowed in a function of t"))),
        },
        Kind::Group(x) => eval_t(k, x)?,
        Kind::Neg(x) => {
            let (a, b) = eval_t(k, x)?;
            (a.neg(), b)
        }
        Kind::Add(x, y) | Kind::Sub(x, y) => {
            let (a, b) = eval_t(k, x)?;
            let (c, d) = eval_t(k, y)?;
            let (l, r) = (a.mul(&d), c.mul(&b));
            let num = if matches!(n.kind, Kind::Add(..)) { l.add(&r) } else { l.sub(&r) };
            (num, b.mul(&d))
        }
        Kind::Mul(x, y) => {
            let (a, b) = eval_t(k, x)?;
            let (c, d) = eval_t(k, y)?;
            (a.mul(&c), b.mul(&d))
        }
        Kind::Div(x, y) => {
            let (a, b) = eval_t(k, x)?;
            let (c, d) = eval_t(k, y)?;
            if c.is_zero() {
                return Err(ParseError::at(y.pos, "division by zero"));
            }
            (a.mul(&d), b.mul(&c))
        }
        Kind::Pow(x, e) => {
            let (a, b) = eval_t(k, x)?;
            let (a, b) = if *e < 0 { (b, a) } else { (a, b) };
            if a.is_zero() {
                return Err(ParseError::at(n.pos, "zero to a negative power"));
            }
            let e = e.unsigned_abs();
            (a.pow(e), b.pow(e))
        }
    })
}

/// Evaluates to `num / den` with bihomogeneous numerator and denominator.
fn eval_form(k: &BaseField, n: &Node) -> PResult<(MPoly, MPoly)> {
    let like = k.one();
    let one = || MPoly::one(4, &like);
    Ok(match &n.kind {
        Kind::Num(_) => (MPoly::constant(4, scalar(k, n)?), one()),
        Kind::Var(v) => match NAMES.iter().position(|m| m == v) {
            Some(i) => (MPoly::var(4, i, &like), one()),
            None if v == "a" => (MPoly::constant(4, scalar(k, n)?), one()),
            None => return Err(ParseError::at(n.pos, format!("`{v}` is not allowed in a form"))),
        },
        Kind::Group(x) => eval_form(k, x)?,
        Kind::Neg(x) => {
            let (a, b) = eval_form(k, x)?;
            (a.neg(), b)
        }
        Kind::Add(x, y) | Kind::Sub(x, y) => {
            let (a, b) = eval_form(k, x)?;
            let (c, d) = eval_form(k, y)?;
            let (l, r) = (a.mul(&d), c.mul(&b));
            let num = if matches!(n.kind, Kind::Add(..)) { l.add(&r) } else { l.sub(&r) };
            (num, b.mul(&d))
        }
        Kind::Mul(x, y) => {
            let (a, b) = eval_form(k, x)?;
            let (c, d) = eval_form(k, y)?;
            (a.mul(&c), b.mul(&d))
        }
        Kind::Div(x, y) => {
            let (a, b) = eval_form(k, x)?;
            let (c, d) = eval_form(k, y)?;
            if c.is_zero() {
                return Err(ParseError::at(y.pos, "division by zero"));
            }
            (a.mul(&d), b.mul(&c))
        }
        Kind::Pow(x, e) => {
            let (a, b) = eval_form(k, x)?;
            let (a, b) = if *e < 0 { (b, a) } else { (a, b) };
            if a.is_zero() {
                return Err(ParseError::at(n.pos, "zero to a negative power"));
            }
            let e = u32::try_from(e.unsigned_abs()).expect("bounded exponent");
            (a.pow(e), b.pow(e))
        }
    })
}

fn mentions(n: &Node, names: &[&str]) -> bool {
    match &n.kind {
        Kind::Num(_) => false,
        Kind::Var(v) => names.contains(&v.as_str()),
        Kind::Neg(x) | Kind::Group(x) | Kind::Pow(x, _) => mentions(x, names),
        Kind::Add(x, y) | Kind::Sub(x, y) | Kind::Mul(x, y) | Kind::Div(x, y) => mentions(x, names) || mentions(y, names),
    }
}

/// A divisor summand `[-] [n*] (P)`, as (sign and multiplicity, point node).
fn divisor_terms(n: &Node) -> Option<Vec<(i64, &Node)>> {
    fn summand(n: &Node, sign: i64) -> Option<(i64, &Node)> {
        match &n.kind {
            Kind::Neg(x) => summand(x, -sign),
            Kind::Group(p) => Some((sign, p)),
            Kind::Mul(c, g) => {
                let (s, v) = match &c.kind {
                    Kind::Num(v) => (sign, v),
                    Kind::Neg(inner) => match &inner.kind {
                        Kind::Num(v) => (-sign, v),
                        _ => return None,
                    },
                    _ => return None,
                };
                let m = v.to_i64().filter(|m| *m >= 2)?;
                match &g.kind {
                    Kind::Group(p) => Some((s * m, p)),
                    _ => None,
                }
            }
            _ => None,
        }
    }
    fn walk<'a>(n: &'a Node, sign: i64, out: &mut Vec<(i64, &'a Node)>) -> Option<()> {
        match &n.kind {
            Kind::Add(x, y) => {
                walk(x, sign, out)?;
                walk(y, sign, out)
            }
            Kind::Sub(x, y) => {
                walk(x, sign, out)?;
                walk(y, -sign, out)
            }
            _ => {
                out.push(summand(n, sign)?);
                Some(())
            }
        }
    }
    let mut out = Vec::new();
    walk(n, 1, &mut out)?;
    Some(out)
}

fn point_of(k: &BaseField, n: &Node) -> PResult<ClosedPoint> {
    if let Kind::Var(v) = &n.kind {
        if v == "inf" {
            return Ok(ClosedPoint::Infinity);
        }
    }
    if mentions(n, &["inf"]) {
        return Err(ParseError::at(n.pos, "`inf` must stand alone"));
    }
    let (num, den) = eval_t(k, n)?;
    if !den.is_constant() {
        return Err(ParseError::at(n.pos, "a point is a constant or a polynomial in t"));
    }
    let p = num.scale(&den.lead().inv().expect("nonzero denominator"));
    if p.deg0() == 0 {
        return Ok(ClosedPoint::rational(&p.coeff(0)));
    }
    ClosedPoint::new(&p).map_err(|e| ParseError::at(n.pos, e.to_string()))
}

fn function_from(k: &BaseField, ast: &Node) -> PResult<FactoredFunction> {
    if mentions(ast, &["inf"]) {
        return Err(ParseError::at(ast.pos, "`inf` appears only inside divisors"));
    }
    let (num, den) = eval_t(k, ast)?;
    if num.is_zero() {
        return Err(ParseError::at(ast.pos, "the zero function"));
    }
    Ok(FactoredFunction::from_ratio(&num, &den)?)
}

fn divisor_from(k: &BaseField, ast: &Node) -> PResult<Divisor> {
    if let Kind::Num(v) = &ast.kind {
        if v.is_zero() {
            return Ok(Divisor::zero());
        }
    }
    let terms = divisor_terms(ast)
        .ok_or_else(|| ParseError::at(ast.pos, "expected a sum of points like `2*(0) - (t^2 + 1) - (inf)`"))?;
    let mut d = Divisor::zero();
    for (m, p) in terms {
        d.add_point(point_of(k, p)?, m);
    }
    Ok(d)
}

fn family_from(k: &BaseField, ast: &Node) -> PResult<FamilyDivisor> {
    if mentions(ast, &["t", "inf"]) {
        return Err(ParseError::at(ast.pos, "forms use x0, x1, y0, y1 only"));
    }
    if let Kind::Num(_) = ast.kind {
        if scalar(k, ast)?.is_zero() {
            return Ok(FamilyDivisor::zero(k));
        }
    }
    family_product(k, ast)
}

fn family_product(k: &BaseField, n: &Node) -> PResult<FamilyDivisor> {
    Ok(match &n.kind {
        Kind::Mul(x, y) => family_product(k, x)?.add(&family_product(k, y)?),
        Kind::Div(x, y) => family_product(k, x)?.add(&family_product(k, y)?.scale(-1)),
        Kind::Pow(x, e) => family_product(k, x)?.scale(*e),
        Kind::Group(x) | Kind::Neg(x) => family_product(k, x)?,
        _ => {
            let (num, den) = eval_form(k, n)?;
            if num.is_zero() {
                return Err(ParseError::at(n.pos, "the zero form"));
            }
            let form = |p: MPoly| BiForm::new(p).map_err(|e| ParseError::at(n.pos, e.to_string()));
            FamilyDivisor::from_form(&form(num)?)?.add(&FamilyDivisor::from_form(&form(den)?)?.scale(-1))
        }
    })
}

/// A rational function of `t`; `field` is used when the text has no tag.
pub fn parse_function(s: &str, field: Option<&BaseField>) -> PResult<FactoredFunction> {
    let (end, k) = resolve(s, field)?;
    function_from(&k, &parse_ast(&s[..end], 0)?)
}

/// A divisor `n1*(P1) + ... - (inf)`, each point a constant, `inf`, or an irreducible polynomial in `t`.
pub fn parse_divisor(s: &str, field: Option<&BaseField>) -> PResult<Divisor> {
    let (end, k) = resolve(s, field)?;
    divisor_from(&k, &parse_ast(&s[..end], 0)?)
}

/// A divisor on `P1 x P1` written as a product and quotient of bihomogeneous forms.
pub fn parse_family(s: &str, field: Option<&BaseField>) -> PResult<FamilyDivisor> {
    let (end, k) = resolve(s, field)?;
    family_from(&k, &parse_ast(&s[..end], 0)?)
}

/// A closed point `(c)`, `(inf)` or an irreducible polynomial, with or without parentheses.
pub fn parse_point(s: &str, field: Option<&BaseField>) -> PResult<ClosedPoint> {
    let (end, k) = resolve(s, field)?;
    let ast = parse_ast(&s[..end], 0)?;
    match &ast.kind {
        Kind::Group(inner) => point_of(&k, inner),
        _ => point_of(&k, &ast),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Function(FactoredFunction),
    Point(ClosedPoint),
    Divisor(Divisor),
    Family(FamilyDivisor),
}

impl Expr {
    pub fn kind(&self) -> &'static str {
        match self {
            Expr::Function(_) => "function",
            Expr::Point(_) => "point",
            Expr::Divisor(_) => "divisor",
            Expr::Family(_) => "family",
        }
    }

    pub fn render(&self) -> String {
        match self {
            Expr::Function(f) => f.render(),
            Expr::Point(p) => p.to_string(),
            Expr::Divisor(d) => d.render(),
            Expr::Family(d) => d.render(),
        }
    }
}

/// Guesses the kind. Forms mention `x0..y1`. A sum of parenthesized points is a divisor unless it is a
/// single parenthesized polynomial or has a linear factor like `(t - 1)`, which divisors always print as `(1)`.
/// A monic irreducible polynomial is a point; everything else is a function.
pub fn parse_expr(s: &str) -> PResult<Expr> {
    let (end, k) = resolve(s, None)?;
    let ast = parse_ast(&s[..end], 0)?;
    if mentions(&ast, &NAMES) {
        return Ok(Expr::Family(family_from(&k, &ast)?));
    }
    if let Some(terms) = divisor_terms(&ast) {
        let degree = |p: &Node| match mentions(p, &["inf"]) {
            true => Some(1),
            false => eval_t(&k, p).ok().filter(|(_, d)| d.is_constant()).map(|(n, _)| n.deg0()),
        };
        let degrees: Vec<Option<usize>> = terms.iter().map(|(_, p)| degree(p)).collect();
        let lone_poly = terms.len() == 1 && terms[0].0 == 1 && degrees[0].unwrap_or(0) > 0 && !mentions(terms[0].1, &["inf"]);
        let linear = terms.iter().zip(&degrees).any(|((_, p), d)| *d == Some(1) && !mentions(p, &["inf"]));
        if !lone_poly && !linear {
            return Ok(Expr::Divisor(divisor_from(&k, &ast)?));
        }
    }
    if mentions(&ast, &["inf"]) {
        return Ok(Expr::Divisor(divisor_from(&k, &ast)?));
    }
    let f = function_from(&k, &ast)?;
    let point = f.leading_constant().is_one() && f.factors().len() == 1 && f.factors().values().all(|&e| e == 1);
    if point {
        let p = f.factors().keys().next().expect("one factor").clone();
        return Ok(Expr::Point(p));
    }
    Ok(Expr::Function(f))
}
