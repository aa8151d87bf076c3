//! The circle at infinity of a cycle boundary: Farey arcs, piecewise
//! PGL₂(ℤ) (Thompson) elements, the Markov-surface involutions and their
//! loxodromic fixed points.
//!
//! The circle is `[-∞, +∞]/(-∞ = +∞)`. A Farey arc never has ∞ in its
//! interior, so arcs are stored as intervals `[lo, hi]` of the extended
//! line with `-∞ ≤ lo < hi ≤ +∞`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactnum::{ExactError, IntMat2, MobiusKind, MobiusMap, ProjPoint, QuadNumber, QuadPoint, Rational};
use crate::par::{self, Exec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThompsonError {
    #[error("marks {0} and {1} do not bound a Farey interval")]
    NotFarey(String, String),
    #[error("a circle needs at least two marks, one of them ∞")]
    Marks,
    #[error("matrix {0} is not in PGL2(Z)")]
    NotUnimodular(IntMat2),
    #[error("bad word '{0}': letters must be x, y, z")]
    BadWord(String),
    #[error("no loxodromic piece with a fixed point inside its interval")]
    NoLoxodromic,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A point of the extended line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    NegInf,
    Fin(Rational),
    PosInf,
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::Fin(r) => write!(f, "{}", ProjPoint::Finite(r.clone())),
            Ext::PosInf => write!(f, "inf"),
        }
    }
}

impl Ext {
    fn proj(&self) -> ProjPoint {
        match self {
            Ext::Fin(r) => ProjPoint::Finite(r.clone()),
            _ => ProjPoint::Infinity,
        }
    }

    /// `(p, q)` with `p/q` the point, `-∞ = -1/0`, `+∞ = 1/0`.
    fn frac(&self) -> (BigInt, BigInt) {
        match self {
            Ext::NegInf => (-BigInt::one(), BigInt::zero()),
            Ext::PosInf => (BigInt::one(), BigInt::zero()),
            Ext::Fin(r) => (r.numer().clone(), r.denom().clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub lo: Ext,
    pub hi: Ext,
}

impl Arc {
    pub fn new(lo: Ext, hi: Ext) -> Self {
        Arc { lo, hi }
    }

    /// `qr - ps = 1` for endpoints `p/q < r/s`.
    pub fn is_farey(&self) -> bool {
        if self.lo >= self.hi {
            return false;
        }
        let (p, q) = self.lo.frac();
        let (r, s) = self.hi.frac();
        q * r - p * s == BigInt::one()
    }

    pub fn mediant(&self) -> Rational {
        let (p, q) = self.lo.frac();
        let (r, s) = self.hi.frac();
        if (&q + &s).is_zero() {
            // the whole line
            return Rational::zero();
        }
        Rational::new(p + r, q + s)
    }

    pub fn contains(&self, t: &ProjPoint) -> bool {
        match t {
            ProjPoint::Infinity => self.lo == Ext::NegInf || self.hi == Ext::PosInf,
            ProjPoint::Finite(r) => {
                let e = Ext::Fin(r.clone());
                self.lo <= e && e <= self.hi
            }
        }
    }

    pub fn contains_interior(&self, r: &Rational) -> bool {
        let e = Ext::Fin(r.clone());
        self.lo < e && e < self.hi
    }

    pub fn contains_quad(&self, t: &QuadPoint) -> Result<bool, ExactError> {
        let x = match t {
            QuadPoint::Infinity => return Ok(self.lo == Ext::NegInf || self.hi == Ext::PosInf),
            QuadPoint::Finite(x) => x,
        };
        let above = match &self.lo {
            Ext::Fin(r) => x.try_cmp(&QuadNumber::rational(r.clone()))? != Ordering::Less,
            Ext::NegInf => true,
            Ext::PosInf => false,
        };
        let below = match &self.hi {
            Ext::Fin(r) => x.try_cmp(&QuadNumber::rational(r.clone()))? != Ordering::Greater,
            Ext::PosInf => true,
            Ext::NegInf => false,
        };
        Ok(above && below)
    }

    /// Image under `m`, or `None` when ∞ falls inside it.
    pub fn image(&self, m: &MobiusMap) -> Option<Arc> {
        let a = m.apply(&self.lo.proj());
        let b = m.apply(&self.hi.proj());
        let (s, e) = if m.matrix().det() > 0 { (a, b) } else { (b, a) };
        let lo = match s {
            ProjPoint::Infinity => Ext::NegInf,
            ProjPoint::Finite(r) => Ext::Fin(r),
        };
        let hi = match e {
            ProjPoint::Infinity => Ext::PosInf,
            ProjPoint::Finite(r) => Ext::Fin(r),
        };
        (lo < hi).then_some(Arc { lo, hi })
    }

    /// Farey subdivision of `self` by mediants having `x` as a break point.
    pub fn subdivide(&self, x: &Rational) -> Vec<Arc> {
        debug_assert!(self.contains_interior(x));
        let m = self.mediant();
        let left = Arc::new(self.lo.clone(), Ext::Fin(m.clone()));
        let right = Arc::new(Ext::Fin(m.clone()), self.hi.clone());
        match x.cmp(&m) {
            Ordering::Equal => vec![left, right],
            Ordering::Less => {
                let mut v = left.subdivide(x);
                v.push(right);
                v
            }
            Ordering::Greater => {
                let mut v = vec![left];
                v.extend(right.subdivide(x));
                v
            }
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

fn split_at(arcs: Vec<Arc>, x: &Rational) -> Vec<Arc> {
    arcs.into_iter()
        .flat_map(|a| if a.contains_interior(x) { a.subdivide(x) } else { vec![a] })
        .collect()
}

/// Projective equality of integer matrices.
pub fn proj_eq(a: &IntMat2, b: &IntMat2) -> bool {
    a == b || *a == b.neg()
}

/// Marked points of `ℚ ∪ {∞}` cutting the circle into Farey arcs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FareyCircle {
    marks: Vec<(String, String)>,
    #[serde(skip)]
    points: Vec<(String, ProjPoint)>,
}

impl FareyCircle {
    pub fn new(marks: &[(&str, ProjPoint)]) -> Result<Self, ThompsonError> {
        if marks.len() < 2 || !marks.iter().any(|m| m.1 == ProjPoint::Infinity) {
            return Err(ThompsonError::Marks);
        }
        let points: Vec<(String, ProjPoint)> = marks.iter().map(|(n, p)| (n.to_string(), p.clone())).collect();
        let c = FareyCircle { marks: points.iter().map(|(n, p)| (n.clone(), p.to_string())).collect(), points };
        for a in c.arcs() {
            if !a.is_farey() {
                return Err(ThompsonError::NotFarey(a.lo.to_string(), a.hi.to_string()));
            }
        }
        Ok(c)
    }

    pub fn marks(&self) -> &[(String, ProjPoint)] {
        &self.points
    }

    pub fn mark(&self, name: &str) -> Option<&ProjPoint> {
        self.points.iter().find(|m| m.0 == name).map(|m| &m.1)
    }

    /// Arcs between consecutive marks, in increasing order from -∞.
    pub fn arcs(&self) -> Vec<Arc> {
        let mut fin: Vec<Rational> = self
            .points
            .iter()
            .filter_map(|(_, p)| match p {
                ProjPoint::Finite(r) => Some(r.clone()),
                ProjPoint::Infinity => None,
            })
            .collect();
        fin.sort();
        let mut cuts = vec![Ext::NegInf];
        cuts.extend(fin.into_iter().map(Ext::Fin));
        cuts.push(Ext::PosInf);
        cuts.windows(2).map(|w| Arc::new(w[0].clone(), w[1].clone())).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub source: Arc,
    pub map: MobiusMap,
    pub target: Arc,
}

impl Serialize for Piece {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Piece", 3)?;
        st.serialize_field("source", &[self.source.lo.to_string(), self.source.hi.to_string()])?;
        st.serialize_field("matrix", &self.map.matrix().rows())?;
        st.serialize_field("target", &[self.target.lo.to_string(), self.target.hi.to_string()])?;
        st.end()
    }
}

/// A circle homeomorphism, integral Möbius on each arc of a Farey
/// partition, sending it onto another Farey partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThompsonElement {
    pieces: Vec<Piece>,
}

fn piece(source: Arc, map: MobiusMap) -> Piece {
    let target = source.image(&map).expect("piece image avoids ∞ in its interior");
    Piece { source, map, target }
}

impl ThompsonElement {
    pub fn identity() -> Self {
        let a = Arc::new(Ext::NegInf, Ext::PosInf);
        ThompsonElement { pieces: vec![Piece { source: a.clone(), map: MobiusMap::identity(), target: a }] }
    }

    /// A global PGL₂(ℤ) map written piecewise over the arcs of `circle`,
    /// refined so that no target has ∞ inside.
    pub fn from_mobius(circle: &FareyCircle, m: IntMat2) -> Result<Self, ThompsonError> {
        if m.det().abs() != 1 {
            return Err(ThompsonError::NotUnimodular(m));
        }
        let map = MobiusMap::new(m)?;
        let mut arcs = circle.arcs();
        if let ProjPoint::Finite(x) = map.inverse().apply(&ProjPoint::Infinity) {
            arcs = split_at(arcs, &x);
        }
        let el = ThompsonElement { pieces: arcs.into_iter().map(|a| piece(a, map)).collect() };
        el.check()?;
        Ok(el)
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Source break points, in increasing order.
    pub fn breakpoints(&self) -> Vec<Rational> {
        self.pieces
            .iter()
            .filter_map(|p| match &p.source.lo {
                Ext::Fin(r) => Some(r.clone()),
                _ => None,
            })
            .collect()
    }

    /// Verifies the partition, Farey, continuity and orientation conditions.
    pub fn check(&self) -> Result<(), ThompsonError> {
        let bad = |a: &Arc| ThompsonError::NotFarey(a.lo.to_string(), a.hi.to_string());
        let first = self.pieces.first().ok_or(ThompsonError::Marks)?;
        let sign = first.map.matrix().det().signum();
        if first.source.lo != Ext::NegInf || self.pieces.last().map(|p| &p.source.hi) != Some(&Ext::PosInf) {
            return Err(ThompsonError::Marks);
        }
        for w in self.pieces.windows(2) {
            if w[0].source.hi != w[1].source.lo {
                return Err(bad(&w[1].source));
            }
            let t = w[0].source.hi.proj();
            if w[0].map.apply(&t) != w[1].map.apply(&t) {
                return Err(bad(&w[1].source));
            }
        }
        let single = self.pieces.len() == 1;
        for p in &self.pieces {
            if (!single && !p.source.is_farey()) || (!single && !p.target.is_farey()) {
                return Err(bad(&p.source));
            }
            if p.map.matrix().det().abs() != 1 || p.map.matrix().det().signum() != sign {
                return Err(ThompsonError::NotUnimodular(p.map.matrix()));
            }
            if p.source.image(&p.map).as_ref() != Some(&p.target) {
                return Err(bad(&p.target));
            }
        }
        let mut targets: Vec<&Arc> = self.pieces.iter().map(|p| &p.target).collect();
        targets.sort_by(|a, b| a.lo.cmp(&b.lo));
        if targets[0].lo != Ext::NegInf || targets.last().map(|a| &a.hi) != Some(&Ext::PosInf) {
            return Err(ThompsonError::Marks);
        }
        if targets.windows(2).any(|w| w[0].hi != w[1].lo) {
            return Err(ThompsonError::Marks);
        }
        Ok(())
    }

    pub fn apply(&self, t: &ProjPoint) -> ProjPoint {
        let p = self.pieces.iter().find(|p| p.source.contains(t)).expect("pieces cover the circle");
        p.map.apply(t)
    }

    pub fn piece_at(&self, t: &ProjPoint) -> &Piece {
        self.pieces.iter().find(|p| p.source.contains(t)).expect("pieces cover the circle")
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ThompsonElement) -> ThompsonElement {
        let cuts = self.breakpoints();
        let mut out = Vec::new();
        for h in &inner.pieces {
            let back = h.map.inverse();
            let mut arcs = vec![h.source.clone()];
            for y in cuts.iter().filter(|y| h.target.contains_interior(y)) {
                if let ProjPoint::Finite(x) = back.apply(&ProjPoint::Finite(y.clone())) {
                    arcs = split_at(arcs, &x);
                }
            }
            for a in arcs {
                let mid = h.map.apply(&ProjPoint::Finite(a.mediant()));
                let g = self.piece_at(&mid);
                out.push(piece(a, g.map.compose(&h.map)));
            }
        }
        let el = ThompsonElement { pieces: merge(out) };
        el.check().expect("composition keeps Farey partitions");
        el
    }

    pub fn inverse(&self) -> ThompsonElement {
        let mut pieces: Vec<Piece> = self
            .pieces
            .iter()
            .map(|p| Piece { source: p.target.clone(), map: p.map.inverse(), target: p.source.clone() })
            .collect();
        pieces.sort_by(|a, b| a.source.lo.cmp(&b.source.lo));
        ThompsonElement { pieces }
    }

    pub fn is_identity(&self) -> bool {
        self.pieces.iter().all(|p| proj_eq(&p.map.matrix(), &IntMat2::IDENTITY))
    }

    /// Equality as circle maps, independent of the chosen partitions.
    pub fn same_map(&self, other: &ThompsonElement) -> bool {
        self.compose(&other.inverse()).is_identity()
    }

    /// Whether all pieces carry the same projective matrix.
    pub fn global_matrix(&self) -> Option<IntMat2> {
        let m = self.pieces[0].map.matrix();
        self.pieces.iter().all(|p| proj_eq(&p.map.matrix(), &m)).then_some(m)
    }
}

/// Joins neighbouring pieces with the same matrix when the union is Farey.
fn merge(pieces: Vec<Piece>) -> Vec<Piece> {
    let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
    for p in pieces {
        if let Some(last) = out.last_mut() {
            let joined = Arc::new(last.source.lo.clone(), p.source.hi.clone());
            if proj_eq(&last.map.matrix(), &p.map.matrix()) && joined.is_farey() {
                if let Some(t) = joined.image(&last.map) {
                    if t.is_farey() {
                        *last = Piece { source: joined, map: last.map, target: t };
                        continue;
                    }
                }
            }
        }
        out.push(p);
    }
    if out.len() == 1 && proj_eq(&out[0].map.matrix(), &IntMat2::IDENTITY) {
        return ThompsonElement::identity().pieces;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Gen {
    X,
    Y,
    Z,
}

impl Gen {
    pub const ALL: [Gen; 3] = [Gen::X, Gen::Y, Gen::Z];

    pub fn matrix(self) -> IntMat2 {
        match self {
            Gen::X => IntMat2::new(-1, -2, 0, 1),
            Gen::Y => IntMat2::new(1, 0, 0, -1),
            Gen::Z => IntMat2::new(1, 0, -2, -1),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Gen::X => 'x',
            Gen::Y => 'y',
            Gen::Z => 'z',
        }
    }
}

pub fn parse_word(s: &str) -> Result<Vec<Gen>, ThompsonError> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            'x' => Ok(Gen::X),
            'y' => Ok(Gen::Y),
            'z' => Ok(Gen::Z),
            _ => Err(ThompsonError::BadWord(s.to_string())),
        })
        .collect()
}

pub fn word_string(w: &[Gen]) -> String {
    w.iter().map(|g| g.letter()).collect()
}

/// The circle at infinity of the Markov surface with marks
/// `j_x, j_y, j_z = 0, -1, ∞` and the involutions `σ_x, σ_y, σ_z`.
#[derive(Clone, Debug, Serialize)]
pub struct MarkovCircle {
    pub circle: FareyCircle,
    pub sigma_x: ThompsonElement,
    pub sigma_y: ThompsonElement,
    pub sigma_z: ThompsonElement,
}

pub fn markov_circle() -> MarkovCircle {
    let circle = FareyCircle::new(&[
        ("E_x", ProjPoint::int(0)),
        ("E_y", ProjPoint::int(-1)),
        ("E_z", ProjPoint::Infinity),
    ])
    .expect("Markov marks are Farey");
    let g = |u: Gen| ThompsonElement::from_mobius(&circle, u.matrix()).expect("generators are unimodular");
    MarkovCircle { sigma_x: g(Gen::X), sigma_y: g(Gen::Y), sigma_z: g(Gen::Z), circle }
}

impl MarkovCircle {
    pub fn generator(&self, u: Gen) -> &ThompsonElement {
        match u {
            Gen::X => &self.sigma_x,
            Gen::Y => &self.sigma_y,
            Gen::Z => &self.sigma_z,
        }
    }

    /// `σ_{w₁} ∘ σ_{w₂} ∘ …`
    pub fn word(&self, w: &[Gen]) -> ThompsonElement {
        w.iter().fold(ThompsonElement::identity(), |acc, u| acc.compose(self.generator(*u)))
    }
}

/// Words without two equal adjacent letters, lengths `1..=max_len`.
pub fn reduced_words(max_len: usize) -> Vec<Vec<Gen>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Gen>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in Gen::ALL {
                if w.last() != Some(&g) {
                    let mut v = w.clone();
                    v.push(g);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// First reduced word of length `≤ max_len` acting as the identity.
pub fn find_relation(max_len: usize, exec: Exec) -> Option<Vec<Gen>> {
    let mc = markov_circle();
    let words = reduced_words(max_len);
    let hits = par::map(exec, &words, |w| mc.word(w).is_identity());
    words.into_iter().zip(hits).find(|(_, h)| *h).map(|(w, _)| w)
}

pub fn free_product_check(max_len: usize, exec: Exec) -> bool {
    find_relation(max_len, exec).is_none()
}

/// Attracting and repelling fixed points of a loxodromic element.
/// `omega` is the circle position of the eigenvaluation `v_+`, `alpha`
/// that of `v_-`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Loxodromic {
    pub omega: QuadPoint,
    pub omega_multiplier: QuadNumber,
    pub alpha: QuadPoint,
    pub alpha_multiplier: QuadNumber,
    pub matrix: IntMat2,
}

pub fn loxodromic_analysis(g: &ThompsonElement) -> Result<Loxodromic, ThompsonError> {
    let mut omega = None;
    let mut alpha = None;
    for p in &g.pieces {
        if p.map.kind() != MobiusKind::Loxodromic {
            continue;
        }
        for t in p.map.fixed_points()? {
            if !p.source.contains_quad(&t)? {
                continue;
            }
            let d = p.map.derivative(&t)?;
            match d.abs().try_cmp(&QuadNumber::one())? {
                Ordering::Less if omega.is_none() => omega = Some((t, d, p.map.matrix())),
                Ordering::Greater if alpha.is_none() => alpha = Some((t, d)),
                _ => {}
            }
        }
    }
    match (omega, alpha) {
        (Some((omega, omega_multiplier, matrix)), Some((alpha, alpha_multiplier))) => {
            Ok(Loxodromic { omega, omega_multiplier, alpha, alpha_multiplier, matrix })
        }
        _ => Err(ThompsonError::NoLoxodromic),
    }
}

/// Unverified guess for λ₁ of the surface automorphism: the spectral
/// radius of the matrix at the attracting fixed point.
pub fn lambda1_trace_heuristic(g: &ThompsonElement) -> Result<QuadNumber, ThompsonError> {
    let l = loxodromic_analysis(g)?;
    Ok(crate::exactnum::spectral_radius(&l.matrix)?)
}

/// For a hyperbolic `B ∈ GL₂(ℤ)` acting on the circle of the torus,
/// `(multiplier at the attracting point, λ_min/λ_max)`.
pub fn torus_multiplier(b: IntMat2) -> Result<(QuadNumber, QuadNumber), ThompsonError> {
    if b.det().abs() != 1 {
        return Err(ThompsonError::NotUnimodular(b));
    }
    let an = MobiusMap::new(b)?.classify()?;
    let mult = an.multiplier.ok_or(ThompsonError::NoLoxodromic)?;
    let (l0, l1) = b.eigenvalues()?;
    let (big, small) = if l0.abs().try_cmp(&l1.abs())? == Ordering::Less { (l1, l0) } else { (l0, l1) };
    Ok((mult, small.try_div(&big)?))
}
