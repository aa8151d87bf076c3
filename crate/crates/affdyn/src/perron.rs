//! Weak Perron numbers of degree at most 2 and their realization as spectral
//! radii of nonnegative integer 2x2 matrices.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{int, rat, spectral_radius, ExactError, IntMat2, QuadNumber};
use crate::par::{self, Exec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PerronError {
    #[error("value {0} is below 1")]
    BelowOne(String),
    #[error("T^2 - {a}T + {b} has no real root")]
    NoRealRoot { a: i64, b: i64 },
    #[error("{0} is a perfect square; use the integer form")]
    SquareRadicand(u64),
    #[error("not weak Perron: conjugate {conjugate} has larger modulus than {value}")]
    NotPerron { value: String, conjugate: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A real algebraic integer of degree at most 2, kept in the form it was
/// given in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuadraticInteger {
    Integer(i64),
    /// Largest real root of `T² - aT + b`.
    Root { a: i64, b: i64 },
    /// `√m`, `m ≥ 2` not a square.
    Sqrt(u64),
}

impl QuadraticInteger {
    pub fn root(a: i64, b: i64) -> Result<Self, PerronError> {
        let q = QuadraticInteger::Root { a, b };
        q.validate()?;
        Ok(q)
    }

    pub fn sqrt(m: u64) -> Result<Self, PerronError> {
        let q = QuadraticInteger::Sqrt(m);
        q.validate()?;
        Ok(q)
    }

    pub fn integer(n: i64) -> Result<Self, PerronError> {
        let q = QuadraticInteger::Integer(n);
        q.validate()?;
        Ok(q)
    }

    fn validate(&self) -> Result<(), PerronError> {
        if let QuadraticInteger::Sqrt(m) = *self {
            let r = (m as f64).sqrt().round() as u64;
            if r * r == m {
                return Err(PerronError::SquareRadicand(m));
            }
        }
        let v = self.value()?;
        if v.try_cmp(&QuadNumber::one())? == Ordering::Less {
            return Err(PerronError::BelowOne(v.to_string()));
        }
        Ok(())
    }

    fn roots(a: i64, b: i64) -> Result<(QuadNumber, QuadNumber), PerronError> {
        let disc = a as i128 * a as i128 - 4 * b as i128;
        if disc < 0 {
            return Err(PerronError::NoRealRoot { a, b });
        }
        let s = QuadNumber::sqrt_int(&BigInt::from(disc))?;
        let half = rat(1, 2);
        Ok((s.add_rational(&int(a)).scale(&half), s.neg().add_rational(&int(a)).scale(&half)))
    }

    pub fn value(&self) -> Result<QuadNumber, PerronError> {
        match *self {
            QuadraticInteger::Integer(n) => Ok(QuadNumber::from_int(n)),
            QuadraticInteger::Root { a, b } => Ok(Self::roots(a, b)?.0),
            QuadraticInteger::Sqrt(m) => Ok(QuadNumber::sqrt_int(&BigInt::from(m))?),
        }
    }

    /// Galois conjugate; `None` when the number is rational.
    pub fn conjugate(&self) -> Result<Option<QuadNumber>, PerronError> {
        let v = self.value()?;
        Ok((!v.is_rational()).then(|| v.conj()))
    }
}

impl fmt::Display for QuadraticInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Ok(v) => write!(f, "{}", v),
            Err(_) => write!(f, "{:?}", self),
        }
    }
}

/// `|q'| ≤ q` for the Galois conjugate `q'` (`<` when `strict`).
pub fn is_perron(q: &QuadraticInteger, strict: bool) -> Result<bool, PerronError> {
    q.validate()?;
    let v = q.value()?;
    match q.conjugate()? {
        None => Ok(true),
        Some(c) => {
            let ord = c.abs().try_cmp(&v)?;
            Ok(ord == Ordering::Less || (!strict && ord == Ordering::Equal))
        }
    }
}

pub fn is_weak_perron(q: &QuadraticInteger) -> Result<bool, PerronError> {
    is_perron(q, false)
}

/// Membership in the dynamical spectrum of the plane, which coincides with
/// that of the torus: the weak Perron numbers of degree at most 2.
pub fn spectrum_membership(q: &QuadraticInteger) -> Result<bool, PerronError> {
    is_weak_perron(q)
}

/// Nonnegative integer matrix with spectral radius `q`.
pub fn realize_as_matrix(q: &QuadraticInteger) -> Result<IntMat2, PerronError> {
    if !is_weak_perron(q)? {
        let conjugate = q.conjugate()?.map(|c| c.to_string()).unwrap_or_default();
        return Err(PerronError::NotPerron { value: q.to_string(), conjugate });
    }
    match *q {
        QuadraticInteger::Integer(n) => Ok(IntMat2::new(n, 0, 0, 1)),
        QuadraticInteger::Sqrt(m) => Ok(IntMat2::new(0, 1, m as i64, 0)),
        QuadraticInteger::Root { a, b } => {
            let (r1, r2) = QuadraticInteger::roots(a, b)?;
            if b == 0 || r2.abs().try_cmp(&r1)? == Ordering::Greater {
                // r1 is an integer here: either T divides the polynomial (the
                // case table would give a singular matrix) or a negative root
                // dominates
                let n = r1.as_rational().expect("dominated irrational root is not weak Perron").to_integer();
                let n: i64 = n.try_into().map_err(|_| ExactError::Parse(r1.to_string()))?;
                return Ok(IntMat2::new(n, 0, 0, 1));
            }
            if b < 0 {
                Ok(IntMat2::new(a, 1, -b, 0))
            } else if a % 2 == 0 {
                let k = a / 2;
                Ok(IntMat2::new(k, 1, k * k - b, k))
            } else {
                let k = (a - 1) / 2;
                Ok(IntMat2::new(k, 1, k * (k + 1) - b, k + 1))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub a: i64,
    pub b: i64,
    pub value: QuadNumber,
    pub matrix: IntMat2,
    pub round_trip: bool,
}

/// Realizes every weak Perron largest root of `T² - aT + b` over the given
/// ranges and checks the spectral radius round trip.
pub fn perron_sweep(
    a_range: std::ops::RangeInclusive<i64>,
    b_range: std::ops::RangeInclusive<i64>,
    exec: Exec,
) -> Vec<SweepRow> {
    let pairs: Vec<(i64, i64)> =
        a_range.flat_map(|a| b_range.clone().map(move |b| (a, b))).filter(|&(a, b)| a * a - 4 * b >= 0).collect();
    par::map(exec, &pairs, |&(a, b)| {
        let q = QuadraticInteger::root(a, b).ok()?;
        if !is_weak_perron(&q).ok()? {
            return None;
        }
        let value = q.value().ok()?;
        let matrix = realize_as_matrix(&q).ok()?;
        let round_trip = matrix.is_nonnegative() && spectral_radius(&matrix).map(|r| r == value).unwrap_or(false);
        Some(SweepRow { a, b, value, matrix, round_trip })
    })
    .into_iter()
    .flatten()
    .collect()
}
