//! Exact numbers: big rationals, real quadratic numbers `p + q√d`, integer
//! 2x2 matrices and Möbius maps on the rational projective line.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("mixed quadratic fields: sqrt({0}) and sqrt({1})")]
    MixedField(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not square-free")]
    NotSquareFree(u64),
    #[error("zero determinant")]
    ZeroDeterminant,
    #[error("characteristic polynomial has non-real roots (discriminant {0})")]
    ComplexSpectrum(i128),
    #[error("cannot parse '{0}'")]
    Parse(String),
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `7`, `-3/4` or `0.25`.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let err = || ExactError::Parse(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((w, f)) = s.split_once('.') {
        if f.is_empty() || !f.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let neg = w.starts_with('-');
        let w: BigInt = if w.is_empty() || w == "-" { BigInt::zero() } else { w.parse().map_err(|_| err())? };
        let scale = BigInt::from(10u32).pow(f.len() as u32);
        let frac: BigInt = f.parse().map_err(|_| err())?;
        let frac = Rational::new(frac, scale);
        let w = Rational::from_integer(w.abs());
        let v = w + frac;
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(n))
}

/// Writes `n` as `k^2 * m` with `m` square-free; returns `(k, m)`.
pub fn square_free_decomposition(n: u128) -> (u128, u128) {
    if n == 0 {
        return (0, 0);
    }
    let mut k = 1u128;
    let mut m = 1u128;
    let mut rest = n;
    let mut p = 2u128;
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            m *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    m *= rest;
    (k, m)
}

pub fn is_square_free(n: u64) -> bool {
    n != 0 && square_free_decomposition(n as u128).0 == 1
}

/// Real quadratic number `p + q√d`. `d = 0` encodes a rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNumber {
    p: Rational,
    q: Rational,
    d: u64,
}

impl QuadNumber {
    pub fn new(p: Rational, q: Rational, d: u64) -> Result<Self, ExactError> {
        if d == 0 || d == 1 {
            let v = if d == 1 { p + q } else if q.is_zero() { p } else { return Err(ExactError::NotSquareFree(0)) };
            return Ok(Self::rational(v));
        }
        if !is_square_free(d) {
            return Err(ExactError::NotSquareFree(d));
        }
        Ok(Self::normalized(p, q, d))
    }

    fn normalized(p: Rational, q: Rational, d: u64) -> Self {
        if q.is_zero() {
            QuadNumber { p, q, d: 0 }
        } else {
            QuadNumber { p, q, d }
        }
    }

    pub fn rational(p: Rational) -> Self {
        QuadNumber { p, q: Rational::zero(), d: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `√n` for a nonnegative integer `n`.
    pub fn sqrt_int(n: &BigInt) -> Result<Self, ExactError> {
        if n.is_negative() {
            return Err(ExactError::ComplexSpectrum(n.to_i128().unwrap_or(i128::MIN)));
        }
        let v = n.to_u128().ok_or_else(|| ExactError::Parse(n.to_string()))?;
        let (k, m) = square_free_decomposition(v);
        if m <= 1 {
            return Ok(Self::rational(Rational::from_integer(BigInt::from(k))));
        }
        Ok(Self::normalized(Rational::zero(), Rational::from_integer(BigInt::from(k)), m as u64))
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// Square-free radicand, 0 for rationals.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    fn common_d(&self, other: &Self) -> Result<u64, ExactError> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(ExactError::MixedField(a, b)),
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, ExactError> {
        let d = self.common_d(o)?;
        Ok(Self::normalized(&self.p + &o.p, &self.q + &o.q, d))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, ExactError> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, ExactError> {
        let d = self.common_d(o)?;
        let dr = Rational::from_integer(BigInt::from(d));
        let p = &self.p * &o.p + &self.q * &o.q * dr;
        let q = &self.p * &o.q + &self.q * &o.p;
        Ok(Self::normalized(p, q, d))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self, ExactError> {
        let n = o.norm();
        if n.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let inv = Self::normalized(&o.p / &n, -(&o.q / &n), o.d);
        self.try_mul(&inv)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::normalized(&self.p * r, &self.q * r, self.d)
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        Self::normalized(&self.p + r, self.q.clone(), self.d)
    }

    pub fn neg(&self) -> Self {
        Self::normalized(-self.p.clone(), -self.q.clone(), self.d)
    }

    /// Galois conjugate `p - q√d`.
    pub fn conj(&self) -> Self {
        Self::normalized(self.p.clone(), -self.q.clone(), self.d)
    }

    /// Field norm `p² - q²d`.
    pub fn norm(&self) -> Rational {
        &self.p * &self.p - &self.q * &self.q * Rational::from_integer(BigInt::from(self.d))
    }

    pub fn signum(&self) -> i32 {
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        // opposite signs: compare p² with q²d
        let lhs = &self.p * &self.p;
        let rhs = &self.q * &self.q * Rational::from_integer(BigInt::from(self.d));
        if lhs > rhs {
            sp
        } else {
            sq
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn try_cmp(&self, o: &Self) -> Result<Ordering, ExactError> {
        Ok(self.try_sub(o)?.signum().cmp(&0))
    }

    pub fn try_pow(&self, n: u32) -> Result<Self, ExactError> {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    pub fn to_f64(&self) -> f64 {
        self.p.to_f64().unwrap_or(f64::NAN) + self.q.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// `value * 10^digits` rounded down, up to one unit (the rational and
    /// irrational parts are floored separately).
    pub fn scaled_floor(&self, digits: u32) -> BigInt {
        let scale = BigInt::from(10u32).pow(digits);
        let pf = floor_rat(&(&self.p * Rational::from_integer(scale.clone())));
        if self.q.is_zero() {
            return pf;
        }
        // |q|√d · 10^digits = sqrt(n² d 10^(2 digits)) / m
        let n = self.q.numer().abs();
        let m = self.q.denom().clone();
        let rad = &n * &n * BigInt::from(self.d) * &scale * &scale;
        let s = rad.sqrt();
        let qf = if self.q.is_negative() {
            -(s / &m) - BigInt::one()
        } else {
            s / &m
        };
        pf + qf
    }
}

fn sign_of(r: &Rational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

fn floor_rat(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

fn fmt_rat(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "{}", fmt_rat(&self.p));
        }
        let qs = if self.q.is_one() {
            String::new()
        } else if (-self.q.clone()).is_one() {
            "-".to_string()
        } else {
            fmt_rat(&self.q)
        };
        if self.p.is_zero() {
            write!(f, "{}√{}", qs, self.d)
        } else if self.q.is_negative() {
            let qs = if qs == "-" { String::new() } else { qs.trim_start_matches('-').to_string() };
            write!(f, "{}-{}√{}", fmt_rat(&self.p), qs, self.d)
        } else {
            write!(f, "{}+{}√{}", fmt_rat(&self.p), qs, self.d)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QuadRepr {
    p: String,
    q: String,
    d: String,
}

impl Serialize for QuadNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QuadRepr { p: fmt_rat(&self.p), q: fmt_rat(&self.q), d: self.d.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadNumber {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = QuadRepr::deserialize(de)?;
        let p = parse_rational(&r.p).map_err(D::Error::custom)?;
        let q = parse_rational(&r.q).map_err(D::Error::custom)?;
        let d: u64 = r.d.parse().map_err(D::Error::custom)?;
        QuadNumber::new(p, q, d).map_err(D::Error::custom)
    }
}

/// Serde adapter writing a `Rational` as a string such as `"3/2"`.
pub mod rat_string {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(de)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

impl From<Rational> for QuadNumber {
    fn from(r: Rational) -> Self {
        QuadNumber::rational(r)
    }
}

/// Integer 2x2 matrix `[[a,b],[c,d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

fn ck(x: Option<i64>) -> i64 {
    x.expect("integer matrix entry overflow")
}

impl IntMat2 {
    pub const IDENTITY: IntMat2 = IntMat2 { a: 1, b: 0, c: 0, d: 1 };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMat2 { a, b, c, d }
    }

    pub fn from_rows(r: [[i64; 2]; 2]) -> Self {
        IntMat2::new(r[0][0], r[0][1], r[1][0], r[1][1])
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn det(&self) -> i64 {
        ck(ck(self.a.checked_mul(self.d)).checked_sub(ck(self.b.checked_mul(self.c))))
    }

    pub fn trace(&self) -> i64 {
        ck(self.a.checked_add(self.d))
    }

    pub fn mul(&self, o: &IntMat2) -> IntMat2 {
        let f = |x: i64, y: i64, z: i64, w: i64| ck(ck(x.checked_mul(y)).checked_add(ck(z.checked_mul(w))));
        IntMat2::new(
            f(self.a, o.a, self.b, o.c),
            f(self.a, o.b, self.b, o.d),
            f(self.c, o.a, self.d, o.c),
            f(self.c, o.b, self.d, o.d),
        )
    }

    pub fn pow(&self, n: u32) -> IntMat2 {
        let mut acc = IntMat2::IDENTITY;
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Adjugate `[[d,-b],[-c,a]]`; the inverse up to the scalar `det`.
    pub fn adjugate(&self) -> IntMat2 {
        IntMat2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn transpose(&self) -> IntMat2 {
        IntMat2::new(self.a, self.c, self.b, self.d)
    }

    pub fn neg(&self) -> IntMat2 {
        IntMat2::new(-self.a, -self.b, -self.c, -self.d)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.a >= 0 && self.b >= 0 && self.c >= 0 && self.d >= 0
    }

    pub fn is_plus_minus_identity(&self) -> bool {
        self.b == 0 && self.c == 0 && self.a == self.d && self.a.abs() == 1
    }

    pub fn max_row_sum(&self) -> i64 {
        (self.a + self.b).max(self.c + self.d)
    }

    /// Discriminant `Tr² - 4 det` of the characteristic polynomial.
    pub fn discriminant(&self) -> i128 {
        let t = self.trace() as i128;
        t * t - 4 * self.det() as i128
    }

    /// Both roots of `T² - Tr T + det`, dominant (largest modulus) first.
    /// When the two roots have equal modulus the positive one comes first.
    pub fn eigenvalues(&self) -> Result<(QuadNumber, QuadNumber), ExactError> {
        let disc = self.discriminant();
        if disc < 0 {
            return Err(ExactError::ComplexSpectrum(disc));
        }
        let s = QuadNumber::sqrt_int(&BigInt::from(disc))?;
        let half = rat(1, 2);
        let t = int(self.trace());
        let r1 = s.add_rational(&t).scale(&half);
        let r2 = s.neg().add_rational(&t).scale(&half);
        match r1.abs().try_cmp(&r2.abs())? {
            Ordering::Less => Ok((r2, r1)),
            Ordering::Equal if r2.signum() > r1.signum() => Ok((r2, r1)),
            _ => Ok((r1, r2)),
        }
    }

    /// Evaluates the characteristic polynomial at `x`.
    pub fn char_poly_at(&self, x: &QuadNumber) -> Result<QuadNumber, ExactError> {
        let x2 = x.try_mul(x)?;
        let tx = x.scale(&int(self.trace()));
        Ok(x2.try_sub(&tx)?.add_rational(&int(self.det())))
    }
}

impl fmt::Display for IntMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Largest-modulus root of `T² - Tr(A) T + det(A)`.
pub fn spectral_radius(m: &IntMat2) -> Result<QuadNumber, ExactError> {
    if m.det() == 0 {
        return Err(ExactError::ZeroDeterminant);
    }
    Ok(m.eigenvalues()?.0)
}

/// A point of `ℚ ∪ {∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Finite(Rational),
    Infinity,
}

impl ProjPoint {
    pub fn int(n: i64) -> Self {
        ProjPoint::Finite(int(n))
    }

    pub fn parse(s: &str) -> Result<Self, ExactError> {
        match s.trim() {
            "inf" | "∞" | "+inf" | "-inf" | "infinity" => Ok(ProjPoint::Infinity),
            t => Ok(ProjPoint::Finite(parse_rational(t)?)),
        }
    }

    /// Homogeneous coordinates `(x, y)` with `t = x / y`.
    pub fn homogeneous(&self) -> (BigInt, BigInt) {
        match self {
            ProjPoint::Finite(r) => (r.numer().clone(), r.denom().clone()),
            ProjPoint::Infinity => (BigInt::one(), BigInt::zero()),
        }
    }

    pub fn from_homogeneous(x: BigInt, y: BigInt) -> Self {
        if y.is_zero() {
            ProjPoint::Infinity
        } else {
            ProjPoint::Finite(Rational::new(x, y))
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(r) => write!(f, "{}", fmt_rat(r)),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// A point of `ℚ(√d) ∪ {∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuadPoint {
    Finite(QuadNumber),
    Infinity,
}

impl fmt::Display for QuadPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadPoint::Finite(x) => write!(f, "{}", x),
            QuadPoint::Infinity => write!(f, "inf"),
        }
    }
}

impl From<ProjPoint> for QuadPoint {
    fn from(p: ProjPoint) -> Self {
        match p {
            ProjPoint::Finite(r) => QuadPoint::Finite(QuadNumber::rational(r)),
            ProjPoint::Infinity => QuadPoint::Infinity,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MobiusKind {
    Elliptic,
    Parabolic,
    Loxodromic,
}

/// Fixed points, their derivatives, and the attracting one if any.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MobiusAnalysis {
    pub kind: MobiusKind,
    pub fixed_points: Vec<QuadPoint>,
    pub derivatives: Vec<QuadNumber>,
    pub attracting: Option<QuadPoint>,
    pub multiplier: Option<QuadNumber>,
}

/// `t ↦ (at+b)/(ct+d)`, matrices taken up to scalars.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MobiusMap {
    m: IntMat2,
}

impl MobiusMap {
    pub fn new(m: IntMat2) -> Result<Self, ExactError> {
        if m.det() == 0 {
            return Err(ExactError::ZeroDeterminant);
        }
        Ok(MobiusMap { m })
    }

    pub fn identity() -> Self {
        MobiusMap { m: IntMat2::IDENTITY }
    }

    pub fn matrix(&self) -> IntMat2 {
        self.m
    }

    pub fn compose(&self, inner: &MobiusMap) -> MobiusMap {
        MobiusMap { m: self.m.mul(&inner.m) }
    }

    /// Inverse, represented by the adjugate.
    pub fn inverse(&self) -> MobiusMap {
        MobiusMap { m: self.m.adjugate() }
    }

    pub fn apply(&self, t: &ProjPoint) -> ProjPoint {
        let (x, y) = t.homogeneous();
        let m = &self.m;
        let nx = BigInt::from(m.a) * &x + BigInt::from(m.b) * &y;
        let ny = BigInt::from(m.c) * &x + BigInt::from(m.d) * &y;
        ProjPoint::from_homogeneous(nx, ny)
    }

    pub fn apply_quad(&self, t: &QuadPoint) -> Result<QuadPoint, ExactError> {
        let m = &self.m;
        match t {
            QuadPoint::Infinity => {
                if m.c == 0 {
                    Ok(QuadPoint::Infinity)
                } else {
                    Ok(QuadPoint::Finite(QuadNumber::rational(rat(m.a, m.c))))
                }
            }
            QuadPoint::Finite(x) => {
                let den = x.scale(&int(m.c)).add_rational(&int(m.d));
                if den.is_zero() {
                    return Ok(QuadPoint::Infinity);
                }
                let num = x.scale(&int(m.a)).add_rational(&int(m.b));
                Ok(QuadPoint::Finite(num.try_div(&den)?))
            }
        }
    }

    /// Derivative at a finite point, `det/(ct+d)²`; at ∞ (when fixed) `d/a`.
    pub fn derivative(&self, t: &QuadPoint) -> Result<QuadNumber, ExactError> {
        let m = &self.m;
        match t {
            QuadPoint::Infinity => {
                if m.c != 0 || m.a == 0 {
                    return Err(ExactError::DivisionByZero);
                }
                Ok(QuadNumber::rational(rat(m.d, m.a)))
            }
            QuadPoint::Finite(x) => {
                let den = x.scale(&int(m.c)).add_rational(&int(m.d));
                let den2 = den.try_mul(&den)?;
                QuadNumber::from_int(m.det()).try_div(&den2)
            }
        }
    }

    /// Real fixed points of `ct² + (d-a)t - b = 0`, plus ∞ when `c = 0`.
    pub fn fixed_points(&self) -> Result<Vec<QuadPoint>, ExactError> {
        let m = &self.m;
        let disc = m.discriminant();
        if m.c == 0 {
            let mut out = vec![QuadPoint::Infinity];
            if m.a != m.d {
                out.insert(0, QuadPoint::Finite(QuadNumber::rational(rat(m.b, m.d - m.a))));
            }
            return Ok(out);
        }
        if disc < 0 {
            return Ok(Vec::new());
        }
        let s = QuadNumber::sqrt_int(&BigInt::from(disc))?;
        let inv = rat(1, 2 * m.c);
        let base = int(m.a - m.d);
        let r1 = s.add_rational(&base).scale(&inv);
        let r2 = s.neg().add_rational(&base).scale(&inv);
        if disc == 0 {
            Ok(vec![QuadPoint::Finite(r1)])
        } else {
            let (lo, hi) = if r1.try_cmp(&r2)? == Ordering::Greater { (r2, r1) } else { (r1, r2) };
            Ok(vec![QuadPoint::Finite(lo), QuadPoint::Finite(hi)])
        }
    }

    /// Classification by `Tr²` against `4 det`. Orientation-reversing maps
    /// (det < 0) with zero trace are involutions and are reported elliptic.
    pub fn kind(&self) -> MobiusKind {
        let m = &self.m;
        let t2 = (m.trace() as i128).pow(2);
        let fd = 4 * m.det() as i128;
        if m.det() < 0 && m.trace() == 0 {
            return MobiusKind::Elliptic;
        }
        match t2.cmp(&fd) {
            Ordering::Greater => MobiusKind::Loxodromic,
            Ordering::Equal => MobiusKind::Parabolic,
            Ordering::Less => MobiusKind::Elliptic,
        }
    }

    pub fn classify(&self) -> Result<MobiusAnalysis, ExactError> {
        let kind = self.kind();
        let fixed_points = self.fixed_points()?;
        let derivatives = fixed_points.iter().map(|p| self.derivative(p)).collect::<Result<Vec<_>, _>>()?;
        let mut attracting = None;
        let mut multiplier = None;
        if kind == MobiusKind::Loxodromic {
            for (p, dv) in fixed_points.iter().zip(&derivatives) {
                if dv.abs().try_cmp(&QuadNumber::one())? == Ordering::Less {
                    attracting = Some(p.clone());
                    multiplier = Some(dv.clone());
                }
            }
        }
        Ok(MobiusAnalysis { kind, fixed_points, derivatives, attracting, multiplier })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: Rational, qq: Rational, d: u64) -> QuadNumber {
        QuadNumber::new(p, qq, d).unwrap()
    }

    #[test]
    fn spectral_radius_examples() {
        assert_eq!(spectral_radius(&IntMat2::new(2, 0, 0, 3)).unwrap(), QuadNumber::from_int(3));
        let phi = q(rat(1, 2), rat(1, 2), 5);
        assert_eq!(spectral_radius(&IntMat2::new(1, 1, 1, 0)).unwrap(), phi);
        assert_eq!(spectral_radius(&IntMat2::new(0, 1, 2, 0)).unwrap(), q(int(0), int(1), 2));
        assert_eq!(spectral_radius(&IntMat2::new(1, 2, 2, 4)), Err(ExactError::ZeroDeterminant));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = q(int(0), int(1), 2);
        let b = q(int(0), int(1), 3);
        assert_eq!(a.try_add(&b), Err(ExactError::MixedField(2, 3)));
        assert!(a.try_add(&QuadNumber::from_int(4)).is_ok());
    }

    #[test]
    fn sqrt_extracts_squares() {
        let s = QuadNumber::sqrt_int(&BigInt::from(12)).unwrap();
        assert_eq!(s, q(int(0), int(2), 3));
        assert_eq!(s.try_mul(&s).unwrap(), QuadNumber::from_int(12));
        assert!(QuadNumber::new(int(1), int(1), 8).is_err());
    }

    #[test]
    fn sign_and_order() {
        let x = q(int(3), int(-1), 5); // 3 - √5 > 0
        assert_eq!(x.signum(), 1);
        let y = q(int(2), int(-1), 5); // 2 - √5 < 0
        assert_eq!(y.signum(), -1);
        assert_eq!(x.try_cmp(&y).unwrap(), Ordering::Greater);
    }

    #[test]
    fn display_and_json() {
        let phi = q(rat(1, 2), rat(1, 2), 5);
        assert_eq!(phi.to_string(), "1/2+1/2√5");
        assert_eq!(q(int(1), int(-1), 2).to_string(), "1-√2");
        let js = serde_json::to_string(&phi).unwrap();
        assert_eq!(js, r#"{"p":"1/2","q":"1/2","d":"5"}"#);
        let back: QuadNumber = serde_json::from_str(&js).unwrap();
        assert_eq!(back, phi);
    }

    #[test]
    fn scaled_floor_matches_known_digits() {
        let s2 = q(int(0), int(1), 2);
        assert_eq!(s2.scaled_floor(10).to_string(), "14142135623");
        assert_eq!(s2.neg().scaled_floor(3).to_string(), "-1415");
        assert_eq!(QuadNumber::rational(rat(-1, 3)).scaled_floor(2).to_string(), "-34");
    }

    #[test]
    fn mobius_apply_examples() {
        let id = MobiusMap::identity();
        assert_eq!(id.apply(&ProjPoint::Finite(rat(5, 3))), ProjPoint::Finite(rat(5, 3)));
        let mx = MobiusMap::new(IntMat2::new(-1, -2, 0, 1)).unwrap();
        assert_eq!(mx.apply(&ProjPoint::int(0)), ProjPoint::int(-2));
        let m = MobiusMap::new(IntMat2::new(3, 2, -2, -1)).unwrap();
        assert_eq!(m.apply(&ProjPoint::int(1)), ProjPoint::Finite(rat(-5, 3)));
        let m = MobiusMap::new(IntMat2::new(-5, -2, 2, 1)).unwrap();
        assert_eq!(m.apply(&ProjPoint::Infinity), ProjPoint::Finite(rat(-5, 2)));
        let pole = MobiusMap::new(IntMat2::new(1, 0, 1, 1)).unwrap();
        assert_eq!(pole.apply(&ProjPoint::int(-1)), ProjPoint::Infinity);
    }

    #[test]
    fn mobius_classify_examples() {
        let shear = MobiusMap::new(IntMat2::new(1, 1, 0, 1)).unwrap();
        assert_eq!(shear.kind(), MobiusKind::Parabolic);
        let m = MobiusMap::new(IntMat2::new(-5, -2, 2, 1)).unwrap();
        let an = m.classify().unwrap();
        assert_eq!(an.kind, MobiusKind::Loxodromic);
        let lo = q(rat(-3, 2), rat(-1, 2), 5);
        let hi = q(rat(-3, 2), rat(1, 2), 5);
        assert_eq!(an.fixed_points, vec![QuadPoint::Finite(lo.clone()), QuadPoint::Finite(hi)]);
        assert_eq!(an.attracting, Some(QuadPoint::Finite(lo)));
        // divisorial lemma form [[d,0],[b,λ]] with d < λ
        let m = MobiusMap::new(IntMat2::new(2, 0, 5, 3)).unwrap();
        let an = m.classify().unwrap();
        assert_eq!(an.kind, MobiusKind::Loxodromic);
        assert_eq!(an.attracting, Some(QuadPoint::Finite(QuadNumber::zero())));
        assert_eq!(an.multiplier, Some(QuadNumber::rational(rat(2, 3))));
        let inv = MobiusMap::new(IntMat2::new(-1, -2, 0, 1)).unwrap();
        assert_eq!(inv.kind(), MobiusKind::Elliptic);
        assert_eq!(inv.classify().unwrap().attracting, None);
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rational("x").is_err());
        assert_eq!(ProjPoint::parse("inf").unwrap(), ProjPoint::Infinity);
    }
}
