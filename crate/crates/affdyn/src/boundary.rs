//! Boundary dual graphs of completions with their intersection form:
//! blow-ups, Castelnuovo contractions, pullback and pushforward of divisors
//! at infinity, dual divisors and the meet/join of divisors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{int, parse_rational, ExactError, Rational};
use crate::linalg::{LinalgError, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundaryError {
    #[error("unknown divisor '{0}'")]
    Unknown(String),
    #[error("duplicate divisor '{0}'")]
    Duplicate(String),
    #[error("'{0}' and '{1}' do not cross")]
    NotCrossing(String, String),
    #[error("'{0}' crosses itself")]
    SelfLoop(String),
    #[error("cannot contract '{name}': {reason}")]
    Contract { name: String, reason: String },
    #[error("intersection form is degenerate; kernel vector {0:?}")]
    Degenerate(Vec<String>),
    #[error("boundary is not connected")]
    Disconnected,
    #[error("meet did not stabilize after {0} blow-ups")]
    NoTermination(usize),
    #[error("bad divisor literal '{0}'")]
    Literal(String),
    #[error("invalid boundary JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divisor {
    pub name: String,
    pub self_int: i64,
    #[serde(default)]
    pub genus: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Rational,
    Elliptic,
    Other,
}

impl Divisor {
    pub fn kind(&self) -> CurveKind {
        match self.genus {
            0 => CurveKind::Rational,
            1 => CurveKind::Elliptic,
            _ => CurveKind::Other,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Center {
    Free(String),
    Satellite(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupRecord {
    pub center: Center,
    pub exceptional: String,
    pub source: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HistoryEntry {
    BlowUp(BlowupRecord),
    Contract { name: String, neighbours: Vec<String> },
}

/// A divisor at infinity `Σ aᵢ Eᵢ`; zero coefficients are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DivisorAtInfinity {
    coeffs: BTreeMap<String, Rational>,
}

impl DivisorAtInfinity {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn prime(name: &str) -> Self {
        let mut d = Self::new();
        d.set(name, Rational::one());
        d
    }

    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, Rational)]) -> Self {
        let mut d = Self::new();
        for (n, c) in pairs {
            d.add_to(n.as_ref(), c);
        }
        d
    }

    pub fn from_ints<S: AsRef<str>>(pairs: &[(S, i64)]) -> Self {
        let mut d = Self::new();
        for (n, c) in pairs {
            d.add_to(n.as_ref(), &int(*c));
        }
        d
    }

    /// `E:2,F:1/2` (an empty string is the zero divisor).
    pub fn parse(s: &str) -> Result<Self, BoundaryError> {
        let mut d = Self::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (n, c) = part.rsplit_once(':').ok_or_else(|| BoundaryError::Literal(s.to_string()))?;
            if n.trim().is_empty() {
                return Err(BoundaryError::Literal(s.to_string()));
            }
            d.add_to(n.trim(), &parse_rational(c)?);
        }
        Ok(d)
    }

    pub fn coeff(&self, name: &str) -> Rational {
        self.coeffs.get(name).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, name: &str, c: Rational) {
        if c.is_zero() {
            self.coeffs.remove(name);
        } else {
            self.coeffs.insert(name.to_string(), c);
        }
    }

    pub fn add_to(&mut self, name: &str, c: &Rational) {
        let v = self.coeff(name) + c;
        self.set(name, v);
    }

    pub fn support(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in &o.coeffs {
            out.add_to(n, c);
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::new();
        for (n, c) in &self.coeffs {
            out.set(n, c * r);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    fn denominator_lcm(&self) -> BigInt {
        self.coeffs.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Componentwise minimum over the given names.
    pub fn min_with<'a>(&self, o: &Self, names: impl Iterator<Item = &'a String>) -> Self {
        let mut out = Self::new();
        for n in names {
            out.set(n, self.coeff(n).min(o.coeff(n)));
        }
        out
    }
}

impl fmt::Display for DivisorAtInfinity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|(n, c)| format!("{}:{}", n, c)).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for DivisorAtInfinity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<&String, String> = self.coeffs.iter().map(|(n, c)| (n, c.to_string())).collect();
        m.serialize(s)
    }
}

#[derive(Serialize, Deserialize)]
struct CompletionJson {
    divisors: Vec<Divisor>,
    crossings: Vec<[String; 2]>,
}

/// Boundary of a completion: named prime divisors and their crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    divisors: Vec<Divisor>,
    crossings: BTreeSet<(String, String)>,
    history: Vec<HistoryEntry>,
    fresh: usize,
}

fn pair(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl Completion {
    pub fn new<S: AsRef<str>>(divisors: Vec<Divisor>, crossings: &[(S, S)]) -> Result<Self, BoundaryError> {
        let mut names = BTreeSet::new();
        for d in &divisors {
            if !names.insert(d.name.clone()) {
                return Err(BoundaryError::Duplicate(d.name.clone()));
            }
        }
        let mut cs = BTreeSet::new();
        for (a, b) in crossings {
            let (a, b) = (a.as_ref(), b.as_ref());
            for n in [a, b] {
                if !names.contains(n) {
                    return Err(BoundaryError::Unknown(n.to_string()));
                }
            }
            if a == b {
                return Err(BoundaryError::SelfLoop(a.to_string()));
            }
            cs.insert(pair(a, b));
        }
        let c = Completion { divisors, crossings: cs, history: Vec::new(), fresh: 0 };
        if !c.is_connected() {
            return Err(BoundaryError::Disconnected);
        }
        Ok(c)
    }

    pub fn from_json(s: &str) -> Result<Self, BoundaryError> {
        let j: CompletionJson = serde_json::from_str(s).map_err(|e| BoundaryError::Json(e.to_string()))?;
        let crossings: Vec<(String, String)> = j.crossings.into_iter().map(|[a, b]| (a, b)).collect();
        Self::new(j.divisors, &crossings)
    }

    pub fn to_json(&self) -> String {
        let j = CompletionJson {
            divisors: self.divisors.clone(),
            crossings: self.crossings.iter().map(|(a, b)| [a.clone(), b.clone()]).collect(),
        };
        serde_json::to_string_pretty(&j).expect("completion serializes")
    }

    /// Graphviz rendering labelled by self-intersections.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph boundary {\n");
        for d in &self.divisors {
            let _ = writeln!(s, "  \"{}\" [label=\"{}\\n{}\"];", d.name, d.name, d.self_int);
        }
        for (a, b) in &self.crossings {
            let _ = writeln!(s, "  \"{}\" -- \"{}\";", a, b);
        }
        s.push_str("}\n");
        s
    }

    pub fn divisors(&self) -> &[Divisor] {
        &self.divisors
    }

    pub fn names(&self) -> Vec<String> {
        self.divisors.iter().map(|d| d.name.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn history(&self) -> &[HistoryEntry] {
        &self.history
    }

    pub fn crossings(&self) -> impl Iterator<Item = &(String, String)> {
        self.crossings.iter()
    }

    pub fn index(&self, name: &str) -> Result<usize, BoundaryError> {
        self.divisors.iter().position(|d| d.name == name).ok_or_else(|| BoundaryError::Unknown(name.to_string()))
    }

    pub fn divisor(&self, name: &str) -> Result<&Divisor, BoundaryError> {
        Ok(&self.divisors[self.index(name)?])
    }

    pub fn self_int(&self, name: &str) -> Result<i64, BoundaryError> {
        Ok(self.divisor(name)?.self_int)
    }

    pub fn cross(&self, a: &str, b: &str) -> bool {
        self.crossings.contains(&pair(a, b))
    }

    pub fn neighbours(&self, name: &str) -> Vec<String> {
        self.crossings
            .iter()
            .filter_map(|(a, b)| {
                if a == name {
                    Some(b.clone())
                } else if b == name {
                    Some(a.clone())
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let Some(first) = self.divisors.first() else { return true };
        let mut seen = BTreeSet::from([first.name.clone()]);
        let mut stack = vec![first.name.clone()];
        while let Some(n) = stack.pop() {
            for m in self.neighbours(&n) {
                if seen.insert(m.clone()) {
                    stack.push(m);
                }
            }
        }
        seen.len() == self.divisors.len()
    }

    fn fresh_name(&mut self) -> String {
        loop {
            self.fresh += 1;
            let n = format!("Ex{}", self.fresh);
            if self.index(&n).is_err() {
                return n;
            }
        }
    }

    fn bump(&mut self, name: &str, by: i64) {
        let i = self.index(name).expect("known divisor");
        self.divisors[i].self_int += by;
    }

    pub fn blow_up(&self, center: &Center) -> Result<(Completion, String), BoundaryError> {
        let mut y = self.clone();
        let e = y.fresh_name();
        match center {
            Center::Free(h) => {
                self.index(h)?;
                y.bump(h, -1);
                y.crossings.insert(pair(h, &e));
            }
            Center::Satellite(a, b) => {
                self.index(a)?;
                self.index(b)?;
                if !self.cross(a, b) {
                    return Err(BoundaryError::NotCrossing(a.clone(), b.clone()));
                }
                y.bump(a, -1);
                y.bump(b, -1);
                y.crossings.remove(&pair(a, b));
                y.crossings.insert(pair(a, &e));
                y.crossings.insert(pair(b, &e));
            }
        }
        y.divisors.push(Divisor { name: e.clone(), self_int: -1, genus: 0 });
        y.history.push(HistoryEntry::BlowUp(BlowupRecord {
            center: center.clone(),
            exceptional: e.clone(),
            source: self.names(),
        }));
        Ok((y, e))
    }

    /// The record of the latest blow-up, if the last step was one.
    pub fn last_blowup(&self) -> Option<&BlowupRecord> {
        match self.history.last() {
            Some(HistoryEntry::BlowUp(r)) => Some(r),
            _ => None,
        }
    }

    pub fn contract(&self, name: &str) -> Result<Completion, BoundaryError> {
        let d = self.divisor(name)?;
        let refuse = |reason: &str| Err(BoundaryError::Contract { name: name.to_string(), reason: reason.to_string() });
        if d.self_int != -1 {
            return refuse(&format!("self-intersection is {}", d.self_int));
        }
        if d.genus != 0 {
            return refuse("not a rational curve");
        }
        if self.divisors.len() == 1 {
            return refuse("last boundary component");
        }
        let nb = self.neighbours(name);
        if nb.len() > 2 {
            return refuse("more than two neighbours would meet in a triple point");
        }
        if nb.len() == 2 && self.cross(&nb[0], &nb[1]) {
            return refuse("the two neighbours already cross");
        }
        let mut x = self.clone();
        let i = x.index(name)?;
        x.divisors.remove(i);
        x.crossings.retain(|(a, b)| a != name && b != name);
        for n in &nb {
            x.bump(n, 1);
        }
        if nb.len() == 2 {
            x.crossings.insert(pair(&nb[0], &nb[1]));
        }
        x.history.push(HistoryEntry::Contract { name: name.to_string(), neighbours: nb });
        Ok(x)
    }

    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.divisors.len();
        let mut m = vec![vec![0; n]; n];
        for (i, d) in self.divisors.iter().enumerate() {
            m[i][i] = d.self_int;
        }
        for (a, b) in &self.crossings {
            let (i, j) = (self.index(a).unwrap(), self.index(b).unwrap());
            m[i][j] = 1;
            m[j][i] = 1;
        }
        m
    }

    pub fn rat_matrix(&self) -> RatMatrix {
        RatMatrix::from_i64(&self.intersection_matrix())
    }

    fn check_support(&self, d: &DivisorAtInfinity) -> Result<(), BoundaryError> {
        for (n, _) in d.support() {
            self.index(n)?;
        }
        Ok(())
    }

    pub fn vector(&self, d: &DivisorAtInfinity) -> Result<Vec<Rational>, BoundaryError> {
        self.check_support(d)?;
        Ok(self.divisors.iter().map(|x| d.coeff(&x.name)).collect())
    }

    pub fn divisor_from_vector(&self, v: &[Rational]) -> DivisorAtInfinity {
        let mut d = DivisorAtInfinity::new();
        for (x, c) in self.divisors.iter().zip(v) {
            d.set(&x.name, c.clone());
        }
        d
    }

    pub fn intersect(&self, a: &DivisorAtInfinity, b: &DivisorAtInfinity) -> Result<Rational, BoundaryError> {
        Ok(self.rat_matrix().bilinear(&self.vector(a)?, &self.vector(b)?))
    }

    fn degenerate(e: LinalgError) -> BoundaryError {
        match e {
            LinalgError::Singular(k) => BoundaryError::Degenerate(k),
            LinalgError::Dimension => BoundaryError::Degenerate(Vec::new()),
        }
    }

    /// `Ok(())` when the intersection form is nondegenerate.
    pub fn check_nondegenerate(&self) -> Result<(), BoundaryError> {
        match self.rat_matrix().kernel_vector() {
            None => Ok(()),
            Some(k) => Err(BoundaryError::Degenerate(k.iter().map(|x| x.to_string()).collect())),
        }
    }

    /// The divisor `Z` with `Z·F = δ_{EF}` for every boundary `F`.
    pub fn dual_divisor(&self, name: &str) -> Result<DivisorAtInfinity, BoundaryError> {
        let i = self.index(name)?;
        let mut e = vec![Rational::zero(); self.len()];
        e[i] = Rational::one();
        let z = self.rat_matrix().solve(&e).map_err(Self::degenerate)?;
        Ok(self.divisor_from_vector(&z))
    }

    /// Meet of two divisors: blow up satellite points where the pair is not
    /// well ordered until it is well ordered everywhere, then take the
    /// componentwise minimum.
    pub fn meet(&self, d1: &DivisorAtInfinity, d2: &DivisorAtInfinity) -> Result<MeetResult, BoundaryError> {
        self.check_support(d1)?;
        self.check_support(d2)?;
        let den = d1.denominator_lcm().lcm(&d2.denominator_lcm());
        let scale = Rational::from_integer(den.clone());
        let (a1, a2) = (d1.scale(&scale), d2.scale(&scale));
        let names = self.names();
        let bound = a1.min_with(&a2, names.iter()).min_with(&DivisorAtInfinity::new(), names.iter());
        let (mut e1, mut e2) = (a1.sub(&bound), a2.sub(&bound));
        let mut bound = bound;
        let mut y = self.clone();
        let mut blowups = Vec::new();
        let limit = 10_000;
        loop {
            let bad = y.crossings.iter().find(|(a, b)| {
                let da = e1.coeff(a) - e2.coeff(a);
                let db = e1.coeff(b) - e2.coeff(b);
                (da * db).is_negative()
            });
            let Some((a, b)) = bad.cloned() else { break };
            if blowups.len() >= limit {
                return Err(BoundaryError::NoTermination(limit));
            }
            let (ny, _) = y.blow_up(&Center::Satellite(a, b))?;
            let rec = ny.last_blowup().expect("just blown up").clone();
            e1 = pullback(&rec, &e1)?;
            e2 = pullback(&rec, &e2)?;
            bound = pullback(&rec, &bound)?;
            blowups.push(rec);
            y = ny;
        }
        let names = y.names();
        let m = e1.min_with(&e2, names.iter()).add(&bound).scale(&Rational::from_integer(den).recip());
        Ok(MeetResult { completion: y, divisor: m, blowups })
    }

    pub fn join(&self, d1: &DivisorAtInfinity, d2: &DivisorAtInfinity) -> Result<MeetResult, BoundaryError> {
        let mut r = self.meet(&d1.neg(), &d2.neg())?;
        r.divisor = r.divisor.neg();
        Ok(r)
    }
}

#[derive(Clone, Debug)]
pub struct MeetResult {
    pub completion: Completion,
    pub divisor: DivisorAtInfinity,
    pub blowups: Vec<BlowupRecord>,
}

/// `π*D`: the exceptional divisor gets the multiplicity of `D` at the
/// center.
pub fn pullback(rec: &BlowupRecord, d: &DivisorAtInfinity) -> Result<DivisorAtInfinity, BoundaryError> {
    for (n, _) in d.support() {
        if !rec.source.contains(n) {
            return Err(BoundaryError::Unknown(n.clone()));
        }
    }
    let c = match &rec.center {
        Center::Free(e) => d.coeff(e),
        Center::Satellite(e, f) => d.coeff(e) + d.coeff(f),
    };
    let mut out = d.clone();
    out.set(&rec.exceptional, c);
    Ok(out)
}

/// `π_*D`: drops the exceptional coefficient.
pub fn pushforward(rec: &BlowupRecord, d: &DivisorAtInfinity) -> Result<DivisorAtInfinity, BoundaryError> {
    for (n, _) in d.support() {
        if n != &rec.exceptional && !rec.source.contains(n) {
            return Err(BoundaryError::Unknown(n.clone()));
        }
    }
    let mut out = d.clone();
    out.set(&rec.exceptional, Rational::zero());
    Ok(out)
}

/// Pulls back along a chain of records, oldest first.
pub fn pullback_chain(recs: &[BlowupRecord], d: &DivisorAtInfinity) -> Result<DivisorAtInfinity, BoundaryError> {
    recs.iter().try_fold(d.clone(), |acc, r| pullback(r, &acc))
}

pub fn pushforward_chain(recs: &[BlowupRecord], d: &DivisorAtInfinity) -> Result<DivisorAtInfinity, BoundaryError> {
    recs.iter().rev().try_fold(d.clone(), |acc, r| pushforward(r, &acc))
}

/// Boundary fixtures used throughout the tests and the CLI.
pub mod fixtures {
    use super::*;

    fn rational(name: &str, self_int: i64) -> Divisor {
        Divisor { name: name.into(), self_int, genus: 0 }
    }

    /// Completion of `{x²y = z² - 1}` in the blown-up `P¹×P¹`: a chain
    /// `F_inf - L - F0` with `F1`, `F-1` attached to `F0`.
    pub fn s2() -> Completion {
        Completion::new(
            vec![rational("F_inf", 0), rational("L", 0), rational("F0", -2), rational("F1", -2), rational("F-1", -2)],
            &[("F_inf", "L"), ("L", "F0"), ("F0", "F1"), ("F0", "F-1")],
        )
        .expect("valid fixture")
    }

    /// The triangle of (-1)-curves at infinity of the Markov surface.
    pub fn markov() -> Completion {
        Completion::new(
            vec![rational("Ex", -1), rational("Ey", -1), rational("Ez", -1)],
            &[("Ex", "Ey"), ("Ey", "Ez"), ("Ex", "Ez")],
        )
        .expect("valid fixture")
    }

    /// A smooth curve of bidegree (2,2) in `P¹×P¹`, an elliptic curve with
    /// self-intersection 8.
    pub fn elliptic() -> Completion {
        Completion::new(vec![Divisor { name: "E".into(), self_int: 8, genus: 1 }], &[] as &[(&str, &str)])
            .expect("valid fixture")
    }

    /// The line at infinity of `P²`.
    pub fn plane() -> Completion {
        Completion::new(vec![rational("L_inf", 1)], &[] as &[(&str, &str)]).expect("valid fixture")
    }
}
