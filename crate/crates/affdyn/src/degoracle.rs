//! Degree growth of polynomial maps of the affine plane, by exact
//! symbolic iteration, with a closed-form oracle for monomial maps.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{IntMat2, Rational};
use crate::par::{self, Exec};

pub const DEFAULT_TERM_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("a map has exactly two components, got {0}")]
    Components(usize),
    #[error("component {0} is identically zero")]
    Zero(usize),
    #[error("need at least {0} degrees")]
    TooShort(usize),
    #[error("matrix has a negative entry")]
    Negative,
    #[error("iteration count {0} outside 1..=12")]
    Count(usize),
}

/// Sparse polynomial in two variables with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: HashMap<(u32, u32), Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term((0, 0), c);
        p
    }

    pub fn var(i: usize) -> Self {
        let e = if i == 0 { (1, 0) } else { (0, 1) };
        let mut p = Poly::zero();
        p.add_term(e, Rational::one());
        p
    }

    pub fn monomial(i: u32, j: u32) -> Self {
        let mut p = Poly::zero();
        p.add_term((i, j), Rational::one());
        p
    }

    fn add_term(&mut self, e: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Poly {
        if r.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                p.add_term((e1.0 + e2.0, e1.1 + e2.1), c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    fn sorted_terms(&self) -> Vec<((u32, u32), Rational)> {
        let mut t: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        t.sort_by(|a, b| (b.0 .0 + b.0 .1, b.0 .0).cmp(&(a.0 .0 + a.0 .1, a.0 .0)));
        t
    }

    fn write_with(&self, f: &mut fmt::Formatter<'_>, vars: [&str; 2]) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, ((i, j), c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut parts = Vec::new();
            if !a.is_one() || (i == 0 && j == 0) {
                parts.push(a.to_string());
            }
            for (v, e) in [(vars[0], i), (vars[1], j)] {
                match e {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{}^{}", v, e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Integer polynomial over a positive common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ZPoly {
    terms: HashMap<(u32, u32), BigInt>,
    den: BigInt,
}

impl ZPoly {
    fn from_poly(p: &Poly) -> ZPoly {
        let den = p.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let terms = p.terms.iter().map(|(e, c)| (*e, c.numer() * (&den / c.denom()))).collect();
        ZPoly { terms, den }
    }

    fn one() -> ZPoly {
        ZPoly { terms: HashMap::from([((0, 0), BigInt::one())]), den: BigInt::one() }
    }

    fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    fn square(&self, exec: Exec) -> ZPoly {
        let all: Vec<(&(u32, u32), &BigInt)> = self.terms.iter().collect();
        let chunk = (all.len() / 64).max(1);
        let starts: Vec<usize> = (0..all.len()).step_by(chunk).collect();
        let partial = par::map(exec, &starts, |&s0| {
            let mut acc: HashMap<(u32, u32), BigInt> = HashMap::new();
            for a in s0..(s0 + chunk).min(all.len()) {
                let (e1, c1) = all[a];
                let sq = c1 * c1;
                *acc.entry((2 * e1.0, 2 * e1.1)).or_insert_with(BigInt::zero) += sq;
                let twice = c1 << 1u32;
                for (e2, c2) in &all[a + 1..] {
                    let k = (e1.0 + e2.0, e1.1 + e2.1);
                    let prod = &twice * *c2;
                    match acc.get_mut(&k) {
                        Some(v) => *v += prod,
                        None => {
                            acc.insert(k, prod);
                        }
                    }
                }
            }
            acc
        });
        let mut terms: HashMap<(u32, u32), BigInt> = HashMap::new();
        for acc in partial {
            for (k, v) in acc {
                match terms.get_mut(&k) {
                    Some(t) => *t += v,
                    None => {
                        terms.insert(k, v);
                    }
                }
            }
        }
        terms.retain(|_, v| !v.is_zero());
        ZPoly { terms, den: &self.den * &self.den }
    }

    fn mul(&self, o: &ZPoly, exec: Exec) -> ZPoly {
        let (small, big) = if self.terms.len() <= o.terms.len() { (self, o) } else { (o, self) };
        let left: Vec<(&(u32, u32), &BigInt)> = small.terms.iter().collect();
        let chunk = (left.len() / 64).max(1);
        let chunks: Vec<&[(&(u32, u32), &BigInt)]> = left.chunks(chunk).collect();
        let partial = par::map(exec, &chunks, |part| {
            let mut acc: HashMap<(u32, u32), BigInt> = HashMap::new();
            for (e1, c1) in part.iter() {
                for (e2, c2) in &big.terms {
                    let k = (e1.0 + e2.0, e1.1 + e2.1);
                    let prod = *c1 * c2;
                    match acc.get_mut(&k) {
                        Some(v) => *v += prod,
                        None => {
                            acc.insert(k, prod);
                        }
                    }
                }
            }
            acc
        });
        let mut terms: HashMap<(u32, u32), BigInt> = HashMap::new();
        for acc in partial {
            for (k, v) in acc {
                match terms.get_mut(&k) {
                    Some(t) => *t += v,
                    None => {
                        terms.insert(k, v);
                    }
                }
            }
        }
        terms.retain(|_, v| !v.is_zero());
        ZPoly { terms, den: &self.den * &o.den }
    }

    fn reduce(&mut self) {
        let g = self.terms.values().fold(self.den.clone(), |acc, c| acc.gcd(c));
        if !g.is_one() && !g.is_zero() {
            for c in self.terms.values_mut() {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    fn to_poly(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, Rational::new(c.clone(), self.den.clone()))).collect() }
    }
}

/// A polynomial map `(P, Q)` of the plane in variables `(x, y)` or `(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    pub components: [Poly; 2],
    pub vars: [String; 2],
}

impl PolyMap {
    pub fn new(p: Poly, q: Poly) -> Result<Self, DegError> {
        for (i, c) in [&p, &q].into_iter().enumerate() {
            if c.is_zero() {
                return Err(DegError::Zero(i));
            }
        }
        Ok(PolyMap { components: [p, q], vars: ["x".into(), "y".into()] })
    }

    /// `(x^a y^b, x^c y^d)` for `A = [[a,b],[c,d]]`.
    pub fn monomial(a: &IntMat2) -> Result<Self, DegError> {
        if !a.is_nonnegative() {
            return Err(DegError::Negative);
        }
        PolyMap::new(Poly::monomial(a.a as u32, a.b as u32), Poly::monomial(a.c as u32, a.d as u32))
    }

    /// `"x^2, y^3"`, `"u*v, 2*v^2-1"`.
    pub fn parse(s: &str) -> Result<Self, DegError> {
        let parts = split_top(s);
        if parts.len() != 2 {
            return Err(DegError::Components(parts.len()));
        }
        let vars = detect_vars(s);
        let mut comps = Vec::new();
        for (off, text) in parts {
            let mut p = Parser { s: text.as_bytes(), pos: 0, off, vars: [vars[0], vars[1]] };
            let e = p.expr()?;
            p.ws();
            if p.pos != p.s.len() {
                return Err(p.err("unexpected input"));
            }
            comps.push(e);
        }
        let q = comps.pop().expect("two components");
        let p = comps.pop().expect("two components");
        let mut m = PolyMap::new(p, q)?;
        m.vars = [vars[0].to_string(), vars[1].to_string()];
        Ok(m)
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PolyMap) -> PolyMap {
        let z = [ZPoly::from_poly(&inner.components[0]), ZPoly::from_poly(&inner.components[1])];
        let mut ctx = Powers::new(z, Exec::Sequential);
        let c = [ctx.substitute(&self.components[0]).to_poly(), ctx.substitute(&self.components[1]).to_poly()];
        let [p, q] = c;
        PolyMap { components: [p, q], vars: inner.vars.clone() }
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = [self.vars[0].as_str(), self.vars[1].as_str()];
        self.components[0].write_with(f, v)?;
        write!(f, ", ")?;
        self.components[1].write_with(f, v)
    }
}

fn detect_vars(s: &str) -> [&'static str; 2] {
    if s.contains('u') || s.contains('v') {
        ["u", "v"]
    } else {
        ["x", "y"]
    }
}

fn split_top(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    off: usize,
    vars: [&'static str; 2],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> DegError {
        DegError::Parse { pos: self.off + self.pos, msg: msg.to_string() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly, DegError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?.neg());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, DegError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    let c = match (d.degree(), d.len()) {
                        (Some(0), 1) => d.coeff(0, 0),
                        _ => return Err(self.err("division by a non-constant")),
                    };
                    acc = acc.scale(&c.recip());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, DegError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, DegError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.ws();
            let n = self.integer()?.to_u32().ok_or_else(|| self.err("exponent too large"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, DegError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let t = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(t.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<Poly, DegError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly::constant(Rational::from_integer(self.integer()?))),
            Some(c) => {
                let name = (c as char).to_string();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => {
                        self.pos += 1;
                        Ok(Poly::var(i))
                    }
                    None => Err(self.err(&format!("unknown symbol '{}'", name))),
                }
            }
            None => Err(self.err("unexpected end")),
        }
    }
}

/// Monomials `A^i B^j` of the inner components, cached. Mixed
/// monomials go through powers of `AB`.
struct Powers {
    base: [ZPoly; 2],
    pows: [Vec<ZPoly>; 3],
    exec: Exec,
}

impl Powers {
    fn new(base: [ZPoly; 2], exec: Exec) -> Self {
        Powers { pows: [vec![ZPoly::one()], vec![ZPoly::one()], vec![ZPoly::one()]], base, exec }
    }

    fn pow(&mut self, k: usize, n: usize) -> ZPoly {
        if k == 2 && n > 0 && self.pows[2].len() == 1 {
            let ab = self.base[0].mul(&self.base[1], self.exec);
            self.pows[2].push(ab);
        }
        while self.pows[k].len() <= n {
            let m = self.pows[k].len();
            let next = if m == 1 {
                self.base[k].clone()
            } else if m % 2 == 0 {
                self.pows[k][m / 2].square(self.exec)
            } else {
                self.pows[k][m - 1].mul(&self.pows[k][1], self.exec)
            };
            self.pows[k].push(next);
        }
        self.pows[k][n].clone()
    }

    fn monomial(&mut self, i: usize, j: usize) -> ZPoly {
        let m = i.min(j);
        let mixed = self.pow(2, m);
        match (i - m, j - m) {
            (0, 0) => mixed,
            (r, 0) if m == 0 => self.pow(0, r),
            (0, r) if m == 0 => self.pow(1, r),
            (r, 0) => mixed.mul(&self.pow(0, r), self.exec),
            (_, r) => mixed.mul(&self.pow(1, r), self.exec),
        }
    }

    fn substitute(&mut self, outer: &Poly) -> ZPoly {
        let mut mons = Vec::new();
        for ((i, j), c) in &outer.terms {
            mons.push((c.clone(), self.monomial(*i as usize, *j as usize)));
        }
        // common denominator of c / den(m) over all monomials
        let den = mons.iter().fold(BigInt::one(), |acc, (c, m)| acc.lcm(&(c.denom() * &m.den)));
        let mut terms: HashMap<(u32, u32), BigInt> = HashMap::new();
        for (c, m) in mons {
            let f = c.numer() * (&den / (c.denom() * &m.den));
            for (e, v) in m.terms {
                *terms.entry(e).or_insert_with(BigInt::zero) += v * &f;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        let mut z = ZPoly { terms, den };
        z.reduce();
        z
    }

    fn largest(&self) -> usize {
        self.pows.iter().flatten().map(|p| p.terms.len()).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSequence {
    /// `deg f, deg f², …`
    pub degrees: Vec<u64>,
    /// Set when the term cap stopped the iteration early.
    pub truncated: bool,
    /// Terms in the largest component of the last iterate.
    pub max_terms: usize,
}

impl DegreeSequence {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,degree\n");
        for (k, d) in self.degrees.iter().enumerate() {
            s.push_str(&format!("{},{}\n", k + 1, d));
        }
        s
    }
}

pub fn iterate_degrees(f: &PolyMap, n: usize, term_cap: usize, exec: Exec) -> Result<DegreeSequence, DegError> {
    if !(1..=12).contains(&n) {
        return Err(DegError::Count(n));
    }
    let mut cur = [ZPoly::from_poly(&f.components[0]), ZPoly::from_poly(&f.components[1])];
    let deg = |c: &[ZPoly; 2]| c.iter().filter_map(ZPoly::degree).max().unwrap_or(0) as u64;
    let mut out = DegreeSequence { degrees: vec![deg(&cur)], truncated: false, max_terms: 0 };
    out.max_terms = cur.iter().map(|c| c.terms.len()).max().unwrap_or(0);
    for _ in 1..n {
        let mut ctx = Powers::new(cur.clone(), exec);
        let p = ctx.substitute(&f.components[0]);
        let q = ctx.substitute(&f.components[1]);
        let size = p.terms.len().max(q.terms.len()).max(ctx.largest());
        if size > term_cap {
            out.truncated = true;
            break;
        }
        cur = [p, q];
        out.degrees.push(deg(&cur));
        out.max_terms = size;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Trend {
    Increasing,
    Decreasing,
    Constant,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lambda1Estimate {
    /// `deg(f^n)/deg(f^{n-1})` for the last two terms.
    #[serde(with = "crate::exactnum::rat_string")]
    pub last_ratio: Rational,
    /// `deg(f^n)^{1/n}`.
    pub root: f64,
    /// Mean of the consecutive ratios.
    pub cesaro: f64,
    pub ratio_trend: Trend,
}

pub fn lambda1_estimate(degrees: &[u64]) -> Result<Lambda1Estimate, DegError> {
    if degrees.len() < 3 || degrees.contains(&0) {
        return Err(DegError::TooShort(3));
    }
    let ratios: Vec<Rational> = degrees.windows(2).map(|w| Rational::new(w[1].into(), w[0].into())).collect();
    let last_ratio = ratios.last().expect("≥ 2 ratios").clone();
    let n = degrees.len() as f64;
    let root = (*degrees.last().expect("nonempty") as f64).powf(1.0 / n);
    let cesaro = ratios.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).sum::<f64>() / ratios.len() as f64;
    let up = ratios.windows(2).all(|w| w[1] >= w[0]);
    let down = ratios.windows(2).all(|w| w[1] <= w[0]);
    let ratio_trend = match (up, down) {
        (true, true) => Trend::Constant,
        (true, false) => Trend::Increasing,
        (false, true) => Trend::Decreasing,
        _ => Trend::Mixed,
    };
    Ok(Lambda1Estimate { last_ratio, root, cesaro, ratio_trend })
}

/// `deg(fᵏ)` for `k = 1..=n` of the monomial map with exponent matrix `a`:
/// the largest row sum of `aᵏ`.
pub fn monomial_degree_oracle(a: &IntMat2, n: usize) -> Result<Vec<u64>, DegError> {
    if !a.is_nonnegative() {
        return Err(DegError::Negative);
    }
    let mut out = Vec::with_capacity(n);
    let mut p = IntMat2::IDENTITY;
    for _ in 0..n {
        p = p.mul(a);
        out.push(p.max_row_sum() as u64);
    }
    Ok(out)
}

/// Plane maps with known λ₁, used by the degree cross-checks.
pub const PLANE_FIXTURES: [(&str, &str); 4] = [
    ("x2y3", "x^2, y^3"),
    ("S2-f", "u*v, 2*v^2-1"),
    ("S2-g", "u*v, u^2*v^2+2*v^2-1"),
    ("fibonacci", "x*y, x"),
];
