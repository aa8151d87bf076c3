//! Valuations centered at infinity: monomial evaluation, the linear forms
//! `L_v` on divisors at infinity, and local dual divisors above a point
//! together with the skewness pairing.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boundary::{pullback_chain, BlowupRecord, BoundaryError, Completion, DivisorAtInfinity};
use crate::exactnum::{rat_string, ExactError, QuadNumber, Rational};
use crate::infnear::{BlowupTree, CenterSpec, Creation, Mode, NodeId, TreeError, TreePoint};
use crate::linalg::RatMatrix;
use crate::par::{self, Exec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("center divisor '{0}' is not on this completion")]
    UnknownCenter(String),
    #[error("weights must be nonnegative and not both zero")]
    BadWeights,
    #[error("scale must be positive")]
    BadScale,
    #[error("'{0}' and '{1}' do not cross")]
    NotSatellite(String, String),
    #[error("curve valuation has infinite skewness")]
    InfiniteSkewness,
    #[error("approximating sequence has not stabilized on this divisor")]
    NotStabilized,
    #[error("empty approximating sequence")]
    EmptySequence,
    #[error("local duals need a tree above a point (maximal-ideal mode)")]
    RelativeTree,
    #[error("no exceptional divisor named '{0}' above the point")]
    NotAbovePoint(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Value of a valuation or linear form; curve valuations take `±∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LValue {
    Finite(QuadNumber),
    PlusInfinity,
    MinusInfinity,
}

impl LValue {
    pub fn finite(&self) -> Option<&QuadNumber> {
        match self {
            LValue::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn try_cmp(&self, o: &LValue) -> Result<Ordering, ExactError> {
        use LValue::*;
        Ok(match (self, o) {
            (Finite(a), Finite(b)) => a.try_cmp(b)?,
            (PlusInfinity, PlusInfinity) | (MinusInfinity, MinusInfinity) => Ordering::Equal,
            (PlusInfinity, _) | (_, MinusInfinity) => Ordering::Greater,
            (MinusInfinity, _) | (_, PlusInfinity) => Ordering::Less,
        })
    }

    pub fn try_min(&self, o: &LValue) -> Result<LValue, ExactError> {
        Ok(if self.try_cmp(o)?.is_le() { self.clone() } else { o.clone() })
    }
}

impl fmt::Display for LValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LValue::Finite(q) => write!(f, "{}", q),
            LValue::PlusInfinity => write!(f, "inf"),
            LValue::MinusInfinity => write!(f, "-inf"),
        }
    }
}

impl Serialize for LValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            LValue::Finite(q) => q.serialize(s),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Valuation {
    /// `scale · ord_E`.
    Divisorial {
        divisor: String,
        #[serde(with = "rat_string")]
        scale: Rational,
    },
    /// Monomial in local coordinates at `E ∩ F`: `v(x) = s`, `v(y) = t`
    /// where `x = 0` is `E` and `y = 0` is `F`.
    Monomial { at: [String; 2], s: QuadNumber, t: QuadNumber },
    /// Order of vanishing along the formal curve following the strict
    /// transforms of `along`; `meets` is a transverse boundary divisor
    /// through the point, if any.
    CurveEnd {
        along: String,
        #[serde(default)]
        meets: Option<String>,
    },
    /// Limit of the given divisorial valuations.
    InfSingular { approximants: Vec<Valuation> },
}

impl Valuation {
    pub fn ord(divisor: &str) -> Self {
        Valuation::Divisorial { divisor: divisor.into(), scale: Rational::one() }
    }

    pub fn monomial(e: &str, f: &str, s: QuadNumber, t: QuadNumber) -> Result<Self, ValuationError> {
        if s.signum() < 0 || t.signum() < 0 || (s.is_zero() && t.is_zero()) {
            return Err(ValuationError::BadWeights);
        }
        Ok(Valuation::Monomial { at: [e.into(), f.into()], s, t })
    }

    pub fn validate(&self) -> Result<(), ValuationError> {
        match self {
            Valuation::Divisorial { scale, .. } if !scale.is_positive() => Err(ValuationError::BadScale),
            Valuation::Monomial { at, s, t } => Self::monomial(&at[0], &at[1], s.clone(), t.clone()).map(|_| ()),
            Valuation::InfSingular { approximants } if approximants.is_empty() => Err(ValuationError::EmptySequence),
            Valuation::InfSingular { approximants } => approximants.iter().try_for_each(Valuation::validate),
            _ => Ok(()),
        }
    }

    /// Monomial with rational weight ratio: divisorial.
    pub fn is_irrational(&self) -> bool {
        match self {
            Valuation::Monomial { s, t, .. } => {
                !s.is_zero() && !t.is_zero() && s.try_div(t).map(|r| !r.is_rational()).unwrap_or(true)
            }
            _ => false,
        }
    }

    /// Divisor names that must be on the completion where `L_v` is read.
    fn center_divisors(&self) -> Vec<&String> {
        match self {
            Valuation::Divisorial { divisor, .. } => vec![divisor],
            Valuation::Monomial { at, .. } => at.iter().collect(),
            Valuation::CurveEnd { along, meets } => std::iter::once(along).chain(meets.iter()).collect(),
            Valuation::InfSingular { approximants } => {
                approximants.iter().flat_map(|a| a.center_divisors()).collect()
            }
        }
    }
}

/// `min { s·i + t·j }` over the monomials `x^i y^j` with nonzero
/// coefficient. Weights may be negative, so the order along the line at
/// infinity of the plane is `s = t = -1`. The zero polynomial has value `+∞`.
pub fn eval_monomial(s: &QuadNumber, t: &QuadNumber, terms: &[(i64, i64, Rational)]) -> Result<LValue, ValuationError> {
    if s.is_zero() && t.is_zero() {
        return Err(ValuationError::BadWeights);
    }
    let mut best: Option<QuadNumber> = None;
    for (i, j, c) in terms {
        if c.is_zero() {
            continue;
        }
        let v = s.scale(&Rational::from_integer((*i).into())).try_add(&t.scale(&Rational::from_integer((*j).into())))?;
        best = Some(match best {
            Some(b) if b.try_cmp(&v)?.is_le() => b,
            _ => v,
        });
    }
    Ok(best.map_or(LValue::PlusInfinity, LValue::Finite))
}

/// `ord_{L∞}(P) = -deg P`.
pub fn ord_line_at_infinity(terms: &[(i64, i64, Rational)]) -> Result<LValue, ValuationError> {
    let m = QuadNumber::from_int(-1);
    eval_monomial(&m, &m, terms)
}

/// `L_v(D)` for a divisor on a completion containing the center of `v`.
pub fn l_v(v: &Valuation, x: &Completion, d: &DivisorAtInfinity) -> Result<LValue, ValuationError> {
    v.validate()?;
    for n in v.center_divisors() {
        x.index(n).map_err(|_| ValuationError::UnknownCenter(n.clone()))?;
    }
    x.vector(d)?;
    if let Valuation::Monomial { at, .. } = v {
        if !x.cross(&at[0], &at[1]) {
            return Err(ValuationError::NotSatellite(at[0].clone(), at[1].clone()));
        }
    }
    l_v_unchecked(v, d)
}

fn l_v_unchecked(v: &Valuation, d: &DivisorAtInfinity) -> Result<LValue, ValuationError> {
    Ok(match v {
        Valuation::Divisorial { divisor, scale } => LValue::Finite(QuadNumber::rational(d.coeff(divisor) * scale)),
        Valuation::Monomial { at, s, t } => LValue::Finite(s.scale(&d.coeff(&at[0])).try_add(&t.scale(&d.coeff(&at[1])))?),
        Valuation::CurveEnd { along, meets } => {
            let a = d.coeff(along);
            if a.is_positive() {
                LValue::PlusInfinity
            } else if a.is_negative() {
                LValue::MinusInfinity
            } else {
                LValue::Finite(QuadNumber::rational(meets.as_ref().map(|m| d.coeff(m)).unwrap_or_else(Rational::zero)))
            }
        }
        Valuation::InfSingular { approximants } => {
            let vals: Vec<LValue> = approximants.iter().map(|a| l_v_unchecked(a, d)).collect::<Result<_, _>>()?;
            match vals.as_slice() {
                [.., a, b] if a == b => b.clone(),
                _ => return Err(ValuationError::NotStabilized),
            }
        }
    })
}

/// `L_v(π*D)` where `v` is centered on the completion reached by `records`.
pub fn l_v_pulled(
    v: &Valuation,
    y: &Completion,
    records: &[BlowupRecord],
    d: &DivisorAtInfinity,
) -> Result<LValue, ValuationError> {
    l_v(v, y, &pullback_chain(records, d)?)
}

/// Local dual divisor `Z_{v,X,p}` with coefficients on the exceptional
/// divisors above `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalDual {
    pub point: String,
    pub coeffs: BTreeMap<String, QuadNumber>,
}

impl LocalDual {
    pub fn coeff(&self, name: &str) -> QuadNumber {
        self.coeffs.get(name).cloned().unwrap_or_else(QuadNumber::zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.values().all(QuadNumber::is_rational)
    }
}

fn require_local(tree: &BlowupTree) -> Result<(), ValuationError> {
    if tree.mode() != Mode::MaximalIdeal {
        return Err(ValuationError::RelativeTree);
    }
    Ok(())
}

/// Intersection matrix of the exceptional divisors above the point, indexed
/// by node id.
pub fn local_intersection_matrix(tree: &BlowupTree) -> Result<RatMatrix, ValuationError> {
    require_local(tree)?;
    let n = tree.len();
    let mut m = vec![vec![0i64; n]; n];
    for node in tree.nodes() {
        m[node.id][node.id] = node.self_int;
    }
    for (p, c) in tree.edges() {
        m[p][c] = 1;
        m[c][p] = 1;
    }
    Ok(RatMatrix::from_i64(&m))
}

/// `Z_{ord_E}` by solving `Z·F = δ_{EF}`.
pub fn z_ord(tree: &BlowupTree, node: NodeId) -> Result<Vec<Rational>, ValuationError> {
    let m = local_intersection_matrix(tree)?;
    tree.node(node)?;
    let mut e = vec![Rational::zero(); tree.len()];
    e[node] = Rational::one();
    m.solve(&e).map_err(|e| ValuationError::Boundary(BoundaryError::Degenerate(vec![e.to_string()])))
}

fn combine(parts: &[(&QuadNumber, &[Rational])]) -> Result<Vec<QuadNumber>, ValuationError> {
    let n = parts.first().map_or(0, |p| p.1.len());
    let mut out = vec![QuadNumber::zero(); n];
    for (c, v) in parts {
        for (o, x) in out.iter_mut().zip(v.iter()) {
            *o = o.try_add(&c.scale(x))?;
        }
    }
    Ok(out)
}

fn to_local(tree: &BlowupTree, z: Vec<QuadNumber>) -> LocalDual {
    let coeffs = tree.nodes().iter().zip(z).filter(|(_, c)| !c.is_zero()).map(|(n, c)| (n.name.clone(), c)).collect();
    LocalDual { point: "p".into(), coeffs }
}

/// Normalized tree point of a valuation and the factor `v(m_p)`.
pub fn tree_point(tree: &BlowupTree, v: &Valuation) -> Result<(TreePoint, Rational), ValuationError> {
    let id = |name: &str| tree.find(name).ok_or_else(|| ValuationError::NotAbovePoint(name.to_string()));
    match v {
        Valuation::Divisorial { divisor, scale } => {
            let n = id(divisor)?;
            if !scale.is_positive() {
                return Err(ValuationError::BadScale);
            }
            Ok((TreePoint::Node(n), scale * Rational::from_integer(tree.b(n).into())))
        }
        Valuation::Monomial { at, s, t } => {
            let (e, f) = (id(&at[0])?, id(&at[1])?);
            let (lower, upper, s, t) = if tree.parent(f) == Some(e) { (e, f, s, t) } else { (f, e, t, s) };
            let total = s
                .scale(&Rational::from_integer(tree.b(lower).into()))
                .try_add(&t.scale(&Rational::from_integer(tree.b(upper).into())))?;
            let Some(c) = total.as_rational().cloned() else {
                // v(m_p) irrational: keep the weights as given
                return Err(ValuationError::Exact(ExactError::Parse(format!("v(m_p) = {}", total))));
            };
            if c.is_zero() {
                return Err(ValuationError::BadWeights);
            }
            let inv = c.recip();
            let pt = tree.monomial_point(lower, upper, s.scale(&inv), t.scale(&inv))?;
            Ok((pt, c))
        }
        Valuation::CurveEnd { .. } => Err(ValuationError::InfiniteSkewness),
        Valuation::InfSingular { .. } => Err(ValuationError::InfiniteSkewness),
    }
}

/// `Z_{v,X,p}` by solving with the local intersection matrix.
pub fn local_dual_point(tree: &BlowupTree, p: &TreePoint) -> Result<LocalDual, ValuationError> {
    Ok(to_local(tree, local_dual_vector(tree, p)?))
}

fn local_dual_vector(tree: &BlowupTree, p: &TreePoint) -> Result<Vec<QuadNumber>, ValuationError> {
    match p {
        TreePoint::Node(n) => {
            let z = z_ord(tree, *n)?;
            let inv = QuadNumber::rational(Rational::new(1.into(), tree.b(*n).into()));
            combine(&[(&inv, &z)])
        }
        TreePoint::Monomial { lower, upper, s, t } => {
            let (zl, zu) = (z_ord(tree, *lower)?, z_ord(tree, *upper)?);
            combine(&[(s, &zl), (t, &zu)])
        }
    }
}

pub fn local_dual(tree: &BlowupTree, v: &Valuation) -> Result<LocalDual, ValuationError> {
    require_local(tree)?;
    let (p, c) = tree_point(tree, v)?;
    let mut z = local_dual_vector(tree, &p)?;
    for x in z.iter_mut() {
        *x = x.scale(&c);
    }
    Ok(to_local(tree, z))
}

/// `Z_{v_E}` for every node through the blow-up recursion: pull back the
/// duals of the hosts and subtract the new exceptional divisor with weight
/// `1/b`.
pub fn node_duals_by_recursion(tree: &BlowupTree) -> Result<Vec<Vec<Rational>>, ValuationError> {
    require_local(tree)?;
    let n = tree.len();
    let mut z: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for node in tree.nodes() {
        let k = node.id;
        let bk = Rational::from_integer(node.b.into());
        match node.creation {
            Creation::Root => {
                let mut v = vec![Rational::zero(); n];
                v[k] = -bk.recip();
                z.push(v);
            }
            Creation::Free { host } => {
                for v in z.iter_mut() {
                    v[k] = v[host].clone();
                }
                let mut v = z[host].clone();
                v[k] -= bk.recip();
                z.push(v);
            }
            Creation::Satellite { lower, upper } => {
                for v in z.iter_mut() {
                    v[k] = &v[lower] + &v[upper];
                }
                let wl = Rational::new(tree.b(lower).into(), node.b.into());
                let wu = Rational::new(tree.b(upper).into(), node.b.into());
                let mut v: Vec<Rational> = z[lower].iter().zip(&z[upper]).map(|(a, b)| &wl * a + &wu * b).collect();
                v[k] -= bk.recip();
                z.push(v);
            }
            Creation::Partner => return Err(ValuationError::RelativeTree),
        }
    }
    Ok(z)
}

/// `Z_{v,X,p}` through the recursion instead of a linear solve.
pub fn local_dual_point_recursive(tree: &BlowupTree, p: &TreePoint) -> Result<LocalDual, ValuationError> {
    let z = node_duals_by_recursion(tree)?;
    let zord = |n: NodeId| -> Vec<Rational> {
        let b = Rational::from_integer(tree.b(n).into());
        z[n].iter().map(|x| x * &b).collect()
    };
    let v = match p {
        TreePoint::Node(n) => z[*n].iter().cloned().map(QuadNumber::rational).collect(),
        TreePoint::Monomial { lower, upper, s, t } => combine(&[(s, &zord(*lower)), (t, &zord(*upper))])?,
    };
    Ok(to_local(tree, v))
}

fn pair_vectors(m: &RatMatrix, u: &[QuadNumber], w: &[QuadNumber]) -> Result<QuadNumber, ValuationError> {
    let mut acc = QuadNumber::zero();
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        let mut row = QuadNumber::zero();
        for (j, wj) in w.iter().enumerate() {
            let mij = m.get(i, j);
            if !mij.is_zero() && !wj.is_zero() {
                row = row.try_add(&wj.scale(mij))?;
            }
        }
        acc = acc.try_add(&ui.try_mul(&row)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pairing {
    /// `-α(v ∧ v')`.
    pub via_skewness: QuadNumber,
    /// `Z_v · Z_v'` in a completion where the product is determined;
    /// `None` for two equal irrational points.
    pub via_intersection: Option<QuadNumber>,
    pub agree: bool,
}

fn descend(p: &TreePoint, lower: NodeId, upper: NodeId, g: NodeId) -> Result<TreePoint, ValuationError> {
    Ok(match p {
        TreePoint::Monomial { lower: l, upper: u, s, t } if (*l, *u) == (lower, upper) => match s.try_cmp(t)? {
            Ordering::Equal => TreePoint::Node(g),
            Ordering::Less => TreePoint::Monomial { lower: g, upper, s: s.clone(), t: t.try_sub(s)? },
            Ordering::Greater => TreePoint::Monomial { lower, upper: g, s: s.try_sub(t)?, t: t.clone() },
        },
        other => other.clone(),
    })
}

/// Refines the tree until the product of local duals is determined (one
/// side divisorial or the centers distinct) and computes it.
pub fn explicit_pairing(tree: &BlowupTree, p: &TreePoint, q: &TreePoint) -> Result<Option<QuadNumber>, ValuationError> {
    const MAX_REFINE: usize = 256;
    require_local(tree)?;
    let mut t = tree.clone();
    let (mut p, mut q) = (p.clone(), q.clone());
    for _ in 0..MAX_REFINE {
        match (&p, &q) {
            (TreePoint::Monomial { lower: l1, upper: u1, s: s1, .. }, TreePoint::Monomial { lower: l2, upper: u2, s: s2, .. })
                if (l1, u1) == (l2, u2) =>
            {
                if p == q && (!s1.is_rational() || !s2.is_rational()) {
                    return Ok(None);
                }
                let (l, u) = (*l1, *u1);
                let g = t.blow_up(CenterSpec::SatelliteBetween(l, u))?;
                p = descend(&p, l, u, g)?;
                q = descend(&q, l, u, g)?;
            }
            _ => {
                let m = local_intersection_matrix(&t)?;
                return Ok(Some(pair_vectors(&m, &local_dual_vector(&t, &p)?, &local_dual_vector(&t, &q)?)?));
            }
        }
    }
    Ok(None)
}

/// `Z_v · Z_v' = -α(v ∧ v')` for normalized points, both ways.
pub fn pair_points(tree: &BlowupTree, p: &TreePoint, q: &TreePoint) -> Result<Pairing, ValuationError> {
    let w = tree.wedge(p, q)?;
    let via_skewness = tree.point_alpha(&w).map_err(|e| match e {
        TreeError::CurveEnd(_) => ValuationError::InfiniteSkewness,
        e => e.into(),
    })?;
    let via_skewness = via_skewness.neg();
    let via_intersection = explicit_pairing(tree, p, q)?;
    let agree = via_intersection.as_ref().is_none_or(|x| *x == via_skewness);
    Ok(Pairing { via_skewness, via_intersection, agree })
}

/// `pair_points` on every pair of divisorial nodes `i ≤ j`, inverting the
/// local intersection matrix once.
pub fn divisorial_pairings(tree: &BlowupTree, exec: Exec) -> Result<Vec<(NodeId, NodeId, Pairing)>, ValuationError> {
    let m = local_intersection_matrix(tree)?;
    let inv = m.inverse().map_err(|e| ValuationError::Boundary(BoundaryError::Degenerate(vec![e.to_string()])))?;
    let ids: Vec<NodeId> = tree.nodes().iter().filter(|n| !n.is_end()).map(|n| n.id).collect();
    let duals: Vec<Vec<Rational>> = (0..tree.len())
        .map(|i| {
            let b = Rational::from_integer(tree.b(i).max(1).into()).recip();
            (0..tree.len()).map(|k| inv.get(k, i) * &b).collect()
        })
        .collect();
    let pairs: Vec<(NodeId, NodeId)> =
        ids.iter().flat_map(|&i| ids.iter().filter(move |&&j| j >= i).map(move |&j| (i, j))).collect();
    par::map(exec, &pairs, |&(i, j)| {
        let w = tree.wedge(&TreePoint::Node(i), &TreePoint::Node(j))?;
        let via_skewness = tree.point_alpha(&w)?.neg();
        let via_intersection = QuadNumber::rational(m.bilinear(&duals[i], &duals[j]));
        let agree = via_intersection == via_skewness;
        Ok((i, j, Pairing { via_skewness, via_intersection: Some(via_intersection), agree }))
    })
    .into_iter()
    .collect()
}

/// Pairing for arbitrary scalings: `Z_{cv}·Z_{c'v'} = cc'·Z_v·Z_v'`.
pub fn pair_local_duals(tree: &BlowupTree, v: &Valuation, w: &Valuation) -> Result<Pairing, ValuationError> {
    require_local(tree)?;
    let (p, c) = tree_point(tree, v)?;
    let (q, c2) = tree_point(tree, w)?;
    let k = c * c2;
    let r = pair_points(tree, &p, &q)?;
    Ok(Pairing {
        via_skewness: r.via_skewness.scale(&k),
        via_intersection: r.via_intersection.map(|x| x.scale(&k)),
        agree: r.agree,
    })
}

/// `α(c·v) = c² α(v)`.
pub fn rescaled_skewness(alpha: &QuadNumber, c: &QuadNumber) -> Result<QuadNumber, ValuationError> {
    Ok(c.try_mul(c)?.try_mul(alpha)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::fixtures;
    use crate::exactnum::{int, rat};

    fn q(n: i64, d: i64) -> QuadNumber {
        QuadNumber::rational(rat(n, d))
    }

    fn poly(ts: &[(i64, i64)]) -> Vec<(i64, i64, Rational)> {
        ts.iter().map(|&(i, j)| (i, j, int(1))).collect()
    }

    fn example() -> (BlowupTree, NodeId, NodeId) {
        let mut t = BlowupTree::absolute();
        let f = t.blow_up(CenterSpec::FreeOn(0)).unwrap();
        let g = t.blow_up(CenterSpec::SatelliteBetween(0, f)).unwrap();
        (t, f, g)
    }

    #[test]
    fn monomial_evaluation() {
        let one = QuadNumber::one();
        assert_eq!(eval_monomial(&one, &one, &poly(&[(2, 0), (0, 3)])).unwrap(), LValue::Finite(q(2, 1)));
        assert_eq!(ord_line_at_infinity(&poly(&[(2, 1)])).unwrap(), LValue::Finite(q(-3, 1)));
        assert_eq!(eval_monomial(&one, &one, &[]).unwrap(), LValue::PlusInfinity);
        let phi = QuadNumber::sqrt_int(&2.into()).unwrap();
        assert_eq!(eval_monomial(&one, &phi, &poly(&[(0, 1)])).unwrap(), LValue::Finite(phi));
    }

    #[test]
    fn linear_forms() {
        let x = fixtures::markov();
        let d = DivisorAtInfinity::from_ints(&[("Ex", 3), ("Ey", 1)]);
        assert_eq!(l_v(&Valuation::ord("Ex"), &x, &d).unwrap(), LValue::Finite(q(3, 1)));
        let v = Valuation::monomial("Ex", "Ey", q(2, 1), q(5, 1)).unwrap();
        assert_eq!(l_v(&v, &x, &DivisorAtInfinity::prime("Ex")).unwrap(), LValue::Finite(q(2, 1)));
        let c = Valuation::CurveEnd { along: "Ex".into(), meets: None };
        assert_eq!(l_v(&c, &x, &d).unwrap(), LValue::PlusInfinity);
        assert_eq!(l_v(&c, &x, &DivisorAtInfinity::prime("Ez")).unwrap(), LValue::Finite(QuadNumber::zero()));
        assert!(matches!(l_v(&Valuation::ord("Q"), &x, &d), Err(ValuationError::UnknownCenter(_))));
    }

    #[test]
    fn inf_singular_stabilization() {
        let x = fixtures::markov();
        let seq = Valuation::InfSingular { approximants: vec![Valuation::ord("Ex"), Valuation::ord("Ex")] };
        assert_eq!(l_v(&seq, &x, &DivisorAtInfinity::prime("Ex")).unwrap(), LValue::Finite(q(1, 1)));
        let seq = Valuation::InfSingular { approximants: vec![Valuation::ord("Ex"), Valuation::ord("Ey")] };
        assert_eq!(l_v(&seq, &x, &DivisorAtInfinity::prime("Ex")), Err(ValuationError::NotStabilized));
    }

    #[test]
    fn first_exceptional_dual() {
        let t = BlowupTree::absolute();
        let z = local_dual(&t, &Valuation::ord("E0")).unwrap();
        assert_eq!(z.coeff("E0"), q(-1, 1));
        let r = pair_local_duals(&t, &Valuation::ord("E0"), &Valuation::ord("E0")).unwrap();
        assert_eq!(r.via_skewness, q(-1, 1));
        assert_eq!(r.via_intersection, Some(q(-1, 1)));
    }

    #[test]
    fn recursion_matches_solve() {
        let (t, f, g) = example();
        let rec = node_duals_by_recursion(&t).unwrap();
        for n in 0..t.len() {
            let a = local_dual_point(&t, &TreePoint::Node(n)).unwrap();
            let b = local_dual_point_recursive(&t, &TreePoint::Node(n)).unwrap();
            assert_eq!(a, b, "node {}", n);
        }
        // satellite child G of (E0, F): ½τ*Z_E0 + ½τ*Z_F - ½G
        assert_eq!(rec[g], vec![rat(-1, 1), rat(-3, 2), rat(-3, 1)]);
        let zg = local_dual_point(&t, &TreePoint::Node(g)).unwrap();
        let m = local_intersection_matrix(&t).unwrap();
        let v: Vec<QuadNumber> = rec[g].iter().cloned().map(QuadNumber::rational).collect();
        assert_eq!(pair_vectors(&m, &v, &v).unwrap(), q(-3, 2));
        assert_eq!(zg.coeff("E2"), q(-3, 1));
        let _ = f;
    }

    #[test]
    fn skewness_pairings() {
        let (t, f, g) = example();
        let r = pair_points(&t, &TreePoint::Node(0), &TreePoint::Node(f)).unwrap();
        assert_eq!(r.via_skewness, q(-1, 1));
        assert!(r.agree);
        let r = pair_points(&t, &TreePoint::Node(g), &TreePoint::Node(g)).unwrap();
        assert_eq!(r.via_skewness, q(-3, 2));
        assert_eq!(r.via_intersection, Some(q(-3, 2)));
        let a = t.monomial_point(0, g, q(1, 3), q(1, 3)).unwrap();
        let b = t.monomial_point(0, g, q(1, 5), q(2, 5)).unwrap();
        let r = pair_points(&t, &a, &b).unwrap();
        assert!(r.agree, "{:?}", r);
        assert_eq!(r.via_skewness, q(-4, 3));
        let r = pair_points(&t, &a, &a).unwrap();
        assert!(r.agree);
    }

    #[test]
    fn irrational_points() {
        let (t, _, g) = example();
        let r2 = QuadNumber::sqrt_int(&2.into()).unwrap();
        // s + 2t = 1 with t = (√2 - 1)/2 ... pick s = 2 - √2, t = (√2 - 1)/2
        let s = QuadNumber::from_int(2).try_sub(&r2).unwrap();
        let tt = r2.add_rational(&int(-1)).scale(&rat(1, 2));
        let p = t.monomial_point(0, g, s, tt).unwrap();
        let z = local_dual_point(&t, &p).unwrap();
        assert!(!z.is_rational());
        let r = pair_points(&t, &p, &p).unwrap();
        assert_eq!(r.via_intersection, None);
        let other = t.monomial_point(0, g, q(1, 3), q(1, 3)).unwrap();
        let r = pair_points(&t, &p, &other).unwrap();
        assert!(r.agree, "{:?}", r);
        let rational = local_dual_point(&t, &other).unwrap();
        assert!(rational.is_rational());
    }

    #[test]
    fn scaled_valuations() {
        let (t, _, g) = example();
        let r = pair_local_duals(&t, &Valuation::ord("E2"), &Valuation::ord("E2")).unwrap();
        // ord_G = 2 v_G
        assert_eq!(r.via_skewness, q(-6, 1));
        assert!(r.agree);
        let v = Valuation::monomial("E0", "E2", q(1, 1), q(1, 1)).unwrap();
        let (pt, c) = tree_point(&t, &v).unwrap();
        assert_eq!(c, int(3));
        assert_eq!(t.point_alpha(&pt).unwrap(), q(4, 3));
        assert_eq!(rescaled_skewness(&q(4, 3), &q(3, 1)).unwrap(), q(12, 1));
        let _ = g;
    }

    #[test]
    fn json_shape() {
        let v = Valuation::monomial("E", "F", q(1, 2), q(1, 1)).unwrap();
        let js = serde_json::to_value(&v).unwrap();
        assert_eq!(js["kind"], "monomial");
        assert_eq!(js["at"][1], "F");
        assert_eq!(js["s"]["p"], "1/2");
        let back: Valuation = serde_json::from_value(js).unwrap();
        assert_eq!(back, v);
        let d: Valuation = serde_json::from_str(r#"{"kind":"divisorial","divisor":"L","scale":"1/2"}"#).unwrap();
        assert_eq!(d, Valuation::Divisorial { divisor: "L".into(), scale: rat(1, 2) });
    }
}
