//! Zigzags (chains of rational boundary curves) and cycles: blow-up and
//! contraction moves on self-intersection sequences, standardization with
//! a replayable move log, and the zigzag/cycle classification of
//! boundaries.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boundary::{Completion, CurveKind};
use crate::linalg::RatMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZigzagError {
    #[error("component {0} has self-intersection {1}, not -1")]
    NotMinusOne(usize, i64),
    #[error("position {0} out of range")]
    Position(usize),
    #[error("cannot contract the only component")]
    LastComponent,
    #[error("contraction would leave a cycle of fewer than three curves")]
    ShortCycle,
    #[error("standardization is for chains, not cycles")]
    Cycle,
    #[error("boundary is not a chain: {0}")]
    NotChain(String),
    #[error("intersection form has inertia (+{pos}, -{neg}, 0:{zero}); no standard form exists")]
    Inadmissible { pos: usize, neg: usize, zero: usize },
    #[error("bad zigzag literal '{0}'")]
    Literal(String),
    #[error("standardization did not finish within {0} moves")]
    NoTermination(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Zigzag {
    comps: Vec<(String, i64)>,
    cyclic: bool,
    next: usize,
}

/// A chain with one extra curve attached to an interior component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fork {
    pub chain: Zigzag,
    pub attached_to: usize,
    pub branch: (String, i64),
}

impl Fork {
    pub fn to_completion(&self) -> Completion {
        let mut c = self.chain.to_completion();
        let (name, si) = &self.branch;
        let host = self.chain.comps[self.attached_to].0.clone();
        let mut divs = c.divisors().to_vec();
        divs.push(crate::boundary::Divisor { name: name.clone(), self_int: *si, genus: 0 });
        let mut cr: Vec<(String, String)> = c.crossings().cloned().collect();
        cr.push((host, name.clone()));
        c = Completion::new(divs, &cr).expect("fork is connected");
        c
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Blown {
    Chain(Zigzag),
    Fork(Fork),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// Free point on an end component; the new curve becomes the new end.
    /// On a one-component chain it is attached on the right.
    BlowUpFree { at: usize },
    /// Crossing of components `at` and `at + 1` (cyclically for cycles).
    BlowUpSatellite { at: usize },
    Contract { at: usize },
}

impl Zigzag {
    pub fn chain(values: &[i64]) -> Self {
        Self::build(values, false)
    }

    pub fn cycle(values: &[i64]) -> Self {
        Self::build(values, true)
    }

    fn build(values: &[i64], cyclic: bool) -> Self {
        let comps = values.iter().enumerate().map(|(i, v)| (format!("B{}", i + 1), *v)).collect();
        Zigzag { comps, cyclic, next: 0 }
    }

    /// `"0,-1,-2,-2"` or `"cycle:-1,-1,-1"`.
    pub fn parse(s: &str) -> Result<Self, ZigzagError> {
        let (cyclic, body) = match s.trim().strip_prefix("cycle:") {
            Some(b) => (true, b),
            None => (false, s.trim()),
        };
        let vals: Result<Vec<i64>, _> = body.split(',').map(|x| x.trim().parse::<i64>()).collect();
        let vals = vals.map_err(|_| ZigzagError::Literal(s.to_string()))?;
        if vals.is_empty() || (cyclic && vals.len() < 3) {
            return Err(ZigzagError::Literal(s.to_string()));
        }
        Ok(Self::build(&vals, cyclic))
    }

    pub fn values(&self) -> Vec<i64> {
        self.comps.iter().map(|c| c.1).collect()
    }

    pub fn components(&self) -> &[(String, i64)] {
        &self.comps
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.cyclic
    }

    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut m = vec![vec![0; n]; n];
        for i in 0..n {
            m[i][i] = self.comps[i].1;
            if i + 1 < n {
                m[i][i + 1] = 1;
                m[i + 1][i] = 1;
            }
        }
        if self.cyclic && n >= 3 {
            m[0][n - 1] = 1;
            m[n - 1][0] = 1;
        }
        m
    }

    /// `(positive, negative, zero)` counts of the intersection form.
    pub fn inertia(&self) -> (usize, usize, usize) {
        RatMatrix::from_i64(&self.intersection_matrix()).inertia()
    }

    pub fn to_completion(&self) -> Completion {
        let divs = self
            .comps
            .iter()
            .map(|(n, v)| crate::boundary::Divisor { name: n.clone(), self_int: *v, genus: 0 })
            .collect();
        let n = self.len();
        let mut cr: Vec<(String, String)> = (0..n.saturating_sub(1))
            .map(|i| (self.comps[i].0.clone(), self.comps[i + 1].0.clone()))
            .collect();
        if self.cyclic && n >= 3 {
            cr.push((self.comps[n - 1].0.clone(), self.comps[0].0.clone()));
        }
        Completion::new(divs, &cr).expect("chains are connected")
    }

    fn fresh(&mut self) -> String {
        loop {
            self.next += 1;
            let n = format!("X{}", self.next);
            if !self.comps.iter().any(|c| c.0 == n) {
                return n;
            }
        }
    }

    pub fn blow_up(&self, mv: Move) -> Result<Blown, ZigzagError> {
        let n = self.len();
        let mut z = self.clone();
        match mv {
            Move::BlowUpFree { at } => {
                if at >= n {
                    return Err(ZigzagError::Position(at));
                }
                let name = z.fresh();
                z.comps[at].1 -= 1;
                if self.cyclic || (at != 0 && at + 1 != n) {
                    return Ok(Blown::Fork(Fork { chain: z, attached_to: at, branch: (name, -1) }));
                }
                if at == 0 && n > 1 {
                    z.comps.insert(0, (name, -1));
                } else {
                    z.comps.push((name, -1));
                }
            }
            Move::BlowUpSatellite { at } => {
                let last = if self.cyclic { n } else { n.saturating_sub(1) };
                if at >= last {
                    return Err(ZigzagError::Position(at));
                }
                let j = (at + 1) % n;
                let name = z.fresh();
                z.comps[at].1 -= 1;
                z.comps[j].1 -= 1;
                z.comps.insert(at + 1, (name, -1));
            }
            Move::Contract { .. } => return Err(ZigzagError::Position(n)),
        }
        Ok(Blown::Chain(z))
    }

    pub fn contract(&self, at: usize) -> Result<Zigzag, ZigzagError> {
        let n = self.len();
        if at >= n {
            return Err(ZigzagError::Position(at));
        }
        if self.comps[at].1 != -1 {
            return Err(ZigzagError::NotMinusOne(at, self.comps[at].1));
        }
        if n == 1 {
            return Err(ZigzagError::LastComponent);
        }
        if self.cyclic && n <= 3 {
            return Err(ZigzagError::ShortCycle);
        }
        let mut z = self.clone();
        let nb: Vec<usize> = if self.cyclic {
            vec![(at + n - 1) % n, (at + 1) % n]
        } else {
            [at.checked_sub(1), (at + 1 < n).then_some(at + 1)].into_iter().flatten().collect()
        };
        for j in nb {
            z.comps[j].1 += 1;
        }
        z.comps.remove(at);
        Ok(z)
    }

    /// Applies a move that keeps a chain (or cycle).
    pub fn apply(&self, mv: Move) -> Result<Zigzag, ZigzagError> {
        match mv {
            Move::Contract { at } => self.contract(at),
            _ => match self.blow_up(mv)? {
                Blown::Chain(z) => Ok(z),
                Blown::Fork(f) => Err(ZigzagError::NotChain(format!("free blow-up on interior component {}", f.attached_to))),
            },
        }
    }

    pub fn replay(&self, log: &[Move]) -> Result<Zigzag, ZigzagError> {
        log.iter().try_fold(self.clone(), |z, m| z.apply(*m))
    }

    /// `0, ≤ -1, ≤ -2, …`
    pub fn is_standard(&self) -> bool {
        if self.cyclic {
            return false;
        }
        let v = self.values();
        v.first() == Some(&0) && v.get(1).is_none_or(|x| *x <= -1) && v.iter().skip(2).all(|x| *x <= -2)
    }

    /// One component `B_k` with `B_k² ≥ 0` and at most one `(-1)`-curve,
    /// adjacent to `B_k`.
    pub fn is_almost_standard(&self) -> bool {
        if self.cyclic {
            return false;
        }
        let v = self.values();
        let nonneg: Vec<usize> = (0..v.len()).filter(|&i| v[i] >= 0).collect();
        let minus: Vec<usize> = (0..v.len()).filter(|&i| v[i] == -1).collect();
        match (nonneg.as_slice(), minus.as_slice()) {
            ([_], []) => true,
            ([k], [l]) => k.abs_diff(*l) == 1,
            _ => false,
        }
    }
}

impl fmt::Display for Zigzag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values().iter().map(|x| x.to_string()).collect();
        if self.cyclic {
            write!(f, "cycle:{}", v.join(","))
        } else {
            write!(f, "{}", v.join(","))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Standardized {
    pub result: Zigzag,
    pub log: Vec<Move>,
}

struct Runner {
    z: Zigzag,
    log: Vec<Move>,
    budget: usize,
}

impl Runner {
    fn step(&mut self, mv: Move) -> Result<(), ZigzagError> {
        if self.log.len() >= self.budget {
            return Err(ZigzagError::NoTermination(self.budget));
        }
        self.z = self.z.apply(mv)?;
        self.log.push(mv);
        Ok(())
    }

    fn v(&self, i: usize) -> i64 {
        self.z.comps[i].1
    }

    fn len(&self) -> usize {
        self.z.len()
    }

    /// Lowers `B² = n > 0` to 0 by blowing up the crossing of `B` with its
    /// right neighbour, then with each new exceptional curve.
    fn zero_out(&mut self, b: usize) -> Result<(), ZigzagError> {
        while self.v(b) > 0 {
            if b + 1 < self.len() {
                self.step(Move::BlowUpSatellite { at: b })?;
            } else {
                self.step(Move::BlowUpFree { at: b })?;
            }
        }
        Ok(())
    }

    /// With `B² = 0` at `b` and a left neighbour `A`: `(A, 0, C) → (A+1, 0, C-1)`.
    fn raise_left(&mut self, b: usize) -> Result<(), ZigzagError> {
        if b + 1 < self.len() {
            self.step(Move::BlowUpSatellite { at: b })?;
        } else {
            self.step(Move::BlowUpFree { at: b })?;
        }
        self.step(Move::Contract { at: b })
    }

    /// `(A, 0, C) → (A-1, 0, C+1)`; `b` moves right by one and back.
    fn lower_left(&mut self, b: usize) -> Result<(), ZigzagError> {
        self.step(Move::BlowUpSatellite { at: b - 1 })?;
        self.step(Move::Contract { at: b + 1 })
    }

    /// With `B² = 0` at index 0: `(0, C, …) → (0, C-1, …)`.
    fn lower_second(&mut self) -> Result<(), ZigzagError> {
        self.step(Move::BlowUpSatellite { at: 0 })?;
        self.step(Move::Contract { at: 0 })
    }
}

/// Puts a chain into standard form. Fixed branch order: contract
/// `(-1)`-curves until some component is nonnegative, lower the leftmost
/// nonnegative component `B` to 0, move `B` to the left end through
/// elementary links, contract the `(-1)`-curves of the tail, then lower the
/// second component to at most -1.
pub fn standardize(z: &Zigzag) -> Result<Standardized, ZigzagError> {
    if z.cyclic {
        return Err(ZigzagError::Cycle);
    }
    let (pos, neg, zero) = z.inertia();
    if !matches!((pos, zero), (1, 0) | (0, 1)) {
        return Err(ZigzagError::Inadmissible { pos, neg, zero });
    }
    let budget = 64 * (z.len() + 4) * (z.values().iter().map(|v| v.unsigned_abs() as usize).sum::<usize>() + 4);
    let mut r = Runner { z: z.clone(), log: Vec::new(), budget };

    while !(0..r.len()).any(|i| r.v(i) >= 0) {
        let i = (0..r.len()).find(|&i| r.v(i) == -1).ok_or(ZigzagError::Inadmissible { pos, neg, zero })?;
        r.step(Move::Contract { at: i })?;
    }
    let mut b = (0..r.len()).find(|&i| r.v(i) >= 0).expect("nonnegative component");
    r.zero_out(b)?;

    while b > 0 {
        while r.v(b - 1) < -1 {
            r.raise_left(b)?;
        }
        while r.v(b - 1) > -1 {
            r.lower_left(b)?;
        }
        r.step(Move::Contract { at: b - 1 })?;
        b -= 1;
        r.zero_out(b)?;
    }

    // the tail after the second component is negative definite here
    while let Some(i) = (2..r.len()).find(|&i| r.v(i) == -1) {
        r.step(Move::Contract { at: i })?;
    }
    while r.len() > 1 && r.v(1) > -1 {
        r.lower_second()?;
    }
    debug_assert!(r.z.is_standard(), "{}", r.z);
    Ok(Standardized { result: r.z, log: r.log })
}

/// Points of a zigzag: a free point on component `i`, or the crossing of
/// `i` and `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ZigzagPoint {
    Free(usize),
    Satellite(usize),
}

/// Pruning rules for indeterminacy points of automorphisms of the
/// complement: `false` when the point can be excluded.
pub fn may_be_indeterminacy_point(z: &Zigzag, p: ZigzagPoint) -> bool {
    let v = z.values();
    let n = v.len();
    if let ZigzagPoint::Satellite(i) = p {
        if i + 1 >= n {
            return false;
        }
        // (…, -1, -1, …) with every other component ≤ -2
        if v[i] == -1 && v[i + 1] == -1 && (0..n).filter(|&k| k != i && k != i + 1).all(|k| v[k] <= -2) {
            return false;
        }
        // (-1, -2, …, -2, F=-2, E=-1, ≤ -2 …)
        let pattern = |f: usize, e: usize| {
            v[0] == -1
                && v[f] == -2
                && v[e] == -1
                && (1..f).all(|k| v[k] == -2)
                && (e + 1..n).all(|k| v[k] <= -2)
        };
        if i >= 1 && pattern(i, i + 1) {
            return false;
        }
    }
    if z.is_almost_standard() && !v.contains(&-1) {
        let k = (0..n).find(|&i| v[i] >= 0).expect("almost standard");
        let interior = k > 0 && k + 1 < n;
        return match p {
            ZigzagPoint::Free(i) => i == k && !interior,
            ZigzagPoint::Satellite(i) => i == k || i + 1 == k,
        };
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryClass {
    Zigzag,
    Cycle,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lambda1Kind {
    /// λ₁ ∈ ℤ, eigenvaluations infinitely singular.
    Integer,
    /// λ₁ a quadratic integer, eigenvaluations irrational.
    QuadraticIrrational,
    /// No loxodromic automorphism.
    NoLoxodromic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: BoundaryClass,
    pub lambda1: Lambda1Kind,
    /// Components in chain or cycle order.
    pub order: Vec<String>,
}

pub fn classify_boundary(x: &Completion) -> Classification {
    let other = Classification { class: BoundaryClass::Other, lambda1: Lambda1Kind::NoLoxodromic, order: Vec::new() };
    if x.divisors().iter().any(|d| d.kind() != CurveKind::Rational) || !x.is_connected() || x.is_empty() {
        return other;
    }
    let names = x.names();
    let deg: Vec<usize> = names.iter().map(|n| x.neighbours(n).len()).collect();
    let n = names.len();
    let walk = |start: &str| -> Vec<String> {
        let mut order = vec![start.to_string()];
        let mut prev: Option<String> = None;
        let mut cur = start.to_string();
        loop {
            let next = x.neighbours(&cur).into_iter().find(|m| Some(m) != prev.as_ref() && !order.contains(m));
            match next {
                Some(m) => {
                    prev = Some(cur);
                    cur = m.clone();
                    order.push(m);
                }
                None => return order,
            }
        }
    };
    if n == 1 || (deg.iter().all(|&d| d <= 2) && deg.iter().filter(|&&d| d == 1).count() == 2) {
        let start = names.iter().zip(&deg).find(|(_, &d)| d <= 1).map(|(s, _)| s.clone()).expect("path end");
        return Classification { class: BoundaryClass::Zigzag, lambda1: Lambda1Kind::Integer, order: walk(&start) };
    }
    if n >= 3 && deg.iter().all(|&d| d == 2) {
        return Classification { class: BoundaryClass::Cycle, lambda1: Lambda1Kind::QuadraticIrrational, order: walk(&names[0]) };
    }
    other
}

/// The boundary as a zigzag or cycle, in the order found by
/// [`classify_boundary`].
pub fn from_completion(x: &Completion) -> Result<Zigzag, ZigzagError> {
    let c = classify_boundary(x);
    let cyclic = match c.class {
        BoundaryClass::Zigzag => false,
        BoundaryClass::Cycle => true,
        BoundaryClass::Other => return Err(ZigzagError::NotChain("neither a chain nor a cycle of rational curves".into())),
    };
    let comps = c.order.iter().map(|n| (n.clone(), x.self_int(n).expect("known"))).collect();
    Ok(Zigzag { comps, cyclic, next: 0 })
}

/// `Σ self-intersections + 3·#components`, unchanged by satellite blow-ups
/// and contractions.
pub fn cycle_charge(z: &Zigzag) -> i64 {
    z.values().iter().sum::<i64>() + 3 * z.len() as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::fixtures;

    #[test]
    fn standard_predicates() {
        assert!(Zigzag::chain(&[0, -1, -2, -2]).is_standard());
        assert!(Zigzag::chain(&[0]).is_standard());
        assert!(!Zigzag::chain(&[0, -1, -1]).is_standard());
        assert!(Zigzag::chain(&[-2, 0, -1, -3]).is_almost_standard());
        assert!(!Zigzag::chain(&[-2, 0, -3, -1]).is_almost_standard());
        assert!(!Zigzag::chain(&[1, 0]).is_almost_standard());
    }

    #[test]
    fn moves() {
        let z = Zigzag::chain(&[-2, -1, -2]);
        assert_eq!(z.contract(1).unwrap().values(), vec![-1, -1]);
        let z = Zigzag::chain(&[0, -1]);
        let y = z.apply(Move::BlowUpSatellite { at: 0 }).unwrap();
        assert_eq!(y.values(), vec![-1, -1, -2]);
        assert_eq!(y.contract(1).unwrap().values(), z.values());
        assert!(matches!(z.contract(0), Err(ZigzagError::NotMinusOne(0, 0))));
        let z = Zigzag::chain(&[0, -2, -2]);
        match z.blow_up(Move::BlowUpFree { at: 1 }).unwrap() {
            Blown::Fork(f) => {
                assert_eq!(f.attached_to, 1);
                assert_eq!(f.chain.values(), vec![0, -3, -2]);
                assert_eq!(classify_boundary(&f.to_completion()).class, BoundaryClass::Other);
            }
            Blown::Chain(_) => panic!("interior free blow-up must fork"),
        }
        let z = Zigzag::chain(&[1]);
        assert_eq!(z.apply(Move::BlowUpFree { at: 0 }).unwrap().values(), vec![0, -1]);
        let z = Zigzag::chain(&[-2, 3]);
        assert_eq!(z.apply(Move::BlowUpFree { at: 0 }).unwrap().values(), vec![-1, -3, 3]);
    }

    #[test]
    fn standardize_examples() {
        let z = Zigzag::chain(&[0, -1, -2, -2]);
        let s = standardize(&z).unwrap();
        assert!(s.log.is_empty());
        for vals in [vec![0, -2, -2], vec![1], vec![2, -3, 0, -1], vec![-3, 0, -2], vec![1, 1], vec![-2, -1, 1, -5]] {
            let z = Zigzag::chain(&vals);
            let (p, _, n0) = z.inertia();
            if !matches!((p, n0), (1, 0) | (0, 1)) {
                assert!(matches!(standardize(&z), Err(ZigzagError::Inadmissible { .. })), "{:?}", vals);
                continue;
            }
            let s = standardize(&z).unwrap();
            assert!(s.result.is_standard(), "{:?} -> {}", vals, s.result);
            assert_eq!(z.replay(&s.log).unwrap(), s.result);
        }
        assert!(matches!(standardize(&Zigzag::cycle(&[-1, -1, -1])), Err(ZigzagError::Cycle)));
    }

    #[test]
    fn inadmissible_chains() {
        // negative definite
        assert!(matches!(standardize(&Zigzag::chain(&[-2, -2])), Err(ZigzagError::Inadmissible { .. })));
        // two positive directions
        assert!(matches!(standardize(&Zigzag::chain(&[1, -5, 1])), Err(ZigzagError::Inadmissible { .. })));
    }

    #[test]
    fn classification() {
        assert_eq!(classify_boundary(&fixtures::markov()).class, BoundaryClass::Cycle);
        assert_eq!(classify_boundary(&fixtures::s2()).class, BoundaryClass::Other);
        assert_eq!(classify_boundary(&fixtures::plane()).class, BoundaryClass::Zigzag);
        assert_eq!(classify_boundary(&fixtures::elliptic()).class, BoundaryClass::Other);
        let z = Zigzag::chain(&[0, -1, -3]);
        let c = classify_boundary(&z.to_completion());
        assert_eq!(c.class, BoundaryClass::Zigzag);
        assert_eq!(from_completion(&z.to_completion()).unwrap().values().len(), 3);
        assert!(from_completion(&fixtures::s2()).is_err());
        let m = from_completion(&fixtures::markov()).unwrap();
        assert!(m.is_cycle());
        assert_eq!(m.values(), vec![-1, -1, -1]);
    }

    #[test]
    fn cycle_moves_keep_charge() {
        let z = Zigzag::cycle(&[-1, -1, -1]);
        let y = z.apply(Move::BlowUpSatellite { at: 2 }).unwrap();
        assert_eq!(y.values(), vec![-2, -1, -2, -1]);
        assert_eq!(cycle_charge(&y), cycle_charge(&z));
        assert_eq!(y.contract(3).unwrap().values(), z.values());
        assert!(matches!(z.contract(0), Err(ZigzagError::ShortCycle)));
    }

    #[test]
    fn indeterminacy_rules() {
        let z = Zigzag::chain(&[-3, -1, -1, -2]);
        assert!(!may_be_indeterminacy_point(&z, ZigzagPoint::Satellite(1)));
        let z = Zigzag::chain(&[-1, -2, -2, -1, -3]);
        assert!(!may_be_indeterminacy_point(&z, ZigzagPoint::Satellite(2)));
        let z = Zigzag::chain(&[-2, 0, -3]);
        assert!(!may_be_indeterminacy_point(&z, ZigzagPoint::Free(0)));
        assert!(!may_be_indeterminacy_point(&z, ZigzagPoint::Free(1)));
        assert!(may_be_indeterminacy_point(&z, ZigzagPoint::Satellite(1)));
        let z = Zigzag::chain(&[0, -3]);
        assert!(may_be_indeterminacy_point(&z, ZigzagPoint::Free(0)));
    }

    #[test]
    fn literals() {
        assert_eq!(Zigzag::parse("0,-1,-2,-2").unwrap().values(), vec![0, -1, -2, -2]);
        assert!(Zigzag::parse("cycle:-1,-1,-1").unwrap().is_cycle());
        assert!(Zigzag::parse("0,,1").is_err());
        assert_eq!(Zigzag::parse("cycle:-1,-1,-1").unwrap().to_string(), "cycle:-1,-1,-1");
    }
}
