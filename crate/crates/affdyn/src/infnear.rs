//! Trees of infinitely near points: generic multiplicity `b`, skewness `α`
//! and Farey labels of the exceptional divisors above a point.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{int, ExactError, QuadNumber, Rational};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("nodes {0} and {1} are not adjacent")]
    NotAdjacent(NodeId, NodeId),
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("node {0} is a curve end and cannot be blown up freely")]
    CurveEnd(NodeId),
    #[error("weights violate s·b(E) + t·b(F) = 1 (got {0})")]
    Normalization(String),
    #[error("weights must be nonnegative and not both zero")]
    BadWeights,
    #[error("the inclusion point is satellite")]
    SatelliteInclusion,
    #[error("segment endpoints are not in tree order")]
    Order,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Rooted at the first exceptional divisor, `α(root) = 1`.
    MaximalIdeal,
    /// Rooted at a divisor `E`, `α(root) = 0`.
    RelativeToE,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CenterSpec {
    FreeOn(NodeId),
    SatelliteBetween(NodeId, NodeId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Creation {
    Root,
    /// Formal end for the second divisor through a satellite base point.
    Partner,
    Free { host: NodeId },
    Satellite { lower: NodeId, upper: NodeId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Node {
    pub id: NodeId,
    pub name: String,
    pub creation: Creation,
    pub parent: Option<NodeId>,
    /// 0 for the partner end.
    pub b: u64,
    /// `None` stands for `+∞`.
    pub alpha: Option<Rational>,
    pub farey: (u64, u64),
    pub self_int: i64,
}

impl Node {
    pub fn is_end(&self) -> bool {
        self.alpha.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupTree {
    mode: Mode,
    nodes: Vec<Node>,
}

/// A point of the tree skeleton: a divisorial node or a monomial point
/// `v_{s,t}` on the segment between a node and one of its children.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TreePoint {
    Node(NodeId),
    Monomial { lower: NodeId, upper: NodeId, s: QuadNumber, t: QuadNumber },
}

impl BlowupTree {
    /// Absolute tree: the root is the exceptional divisor of the blow-up of
    /// the base point.
    pub fn absolute() -> Self {
        let root = Node {
            id: 0,
            name: "E0".into(),
            creation: Creation::Root,
            parent: None,
            b: 1,
            alpha: Some(Rational::one()),
            farey: (0, 1),
            self_int: -1,
        };
        BlowupTree { mode: Mode::MaximalIdeal, nodes: vec![root] }
    }

    /// Relative tree rooted at a divisor `E` of self-intersection `self_int`.
    pub fn relative(self_int: i64) -> Self {
        let root = Node {
            id: 0,
            name: "E".into(),
            creation: Creation::Root,
            parent: None,
            b: 1,
            alpha: Some(Rational::zero()),
            farey: (0, 1),
            self_int,
        };
        BlowupTree { mode: Mode::RelativeToE, nodes: vec![root] }
    }

    /// Relative tree at the satellite point `E ∩ F`; `F` is a formal end.
    pub fn relative_at_satellite(e_self: i64, f_self: i64) -> Self {
        let mut t = Self::relative(e_self);
        t.nodes.push(Node {
            id: 1,
            name: "F".into(),
            creation: Creation::Partner,
            parent: Some(0),
            b: 0,
            alpha: None,
            farey: (1, 0),
            self_int: f_self,
        });
        t
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> Result<&Node, TreeError> {
        self.nodes.get(id).ok_or(TreeError::UnknownNode(id))
    }

    pub fn find(&self, name: &str) -> Option<NodeId> {
        self.nodes.iter().find(|n| n.name == name).map(|n| n.id)
    }

    pub fn rename(&mut self, id: NodeId, name: &str) {
        self.nodes[id].name = name.to_string();
    }

    pub fn b(&self, id: NodeId) -> u64 {
        self.nodes[id].b
    }

    pub fn alpha(&self, id: NodeId) -> Option<&Rational> {
        self.nodes[id].alpha.as_ref()
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.nodes[id].parent
    }

    pub fn children(&self, id: NodeId) -> Vec<NodeId> {
        self.nodes.iter().filter(|n| n.parent == Some(id)).map(|n| n.id).collect()
    }

    pub fn adjacent(&self, x: NodeId, y: NodeId) -> bool {
        x < self.len() && y < self.len() && (self.nodes[x].parent == Some(y) || self.nodes[y].parent == Some(x))
    }

    /// Unordered adjacent pairs `(parent, child)` of the dual graph.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        self.nodes.iter().filter_map(|n| n.parent.map(|p| (p, n.id))).collect()
    }

    /// Nodes that are exceptional curves (excludes the relative root and
    /// the partner end).
    pub fn exceptional(&self) -> Vec<NodeId> {
        self.nodes
            .iter()
            .filter(|n| match n.creation {
                Creation::Root => self.mode == Mode::MaximalIdeal,
                Creation::Partner => false,
                _ => true,
            })
            .map(|n| n.id)
            .collect()
    }

    /// Root-first path to `id`.
    pub fn ancestors(&self, id: NodeId) -> Vec<NodeId> {
        let mut path = vec![id];
        let mut cur = id;
        while let Some(p) = self.nodes[cur].parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// `x ≤ y` in the tree order.
    pub fn le(&self, x: NodeId, y: NodeId) -> bool {
        let mut cur = Some(y);
        while let Some(c) = cur {
            if c == x {
                return true;
            }
            cur = self.nodes[c].parent;
        }
        false
    }

    pub fn blow_up(&mut self, center: CenterSpec) -> Result<NodeId, TreeError> {
        let id = self.nodes.len();
        let node = match center {
            CenterSpec::FreeOn(h) => {
                let host = self.node(h)?.clone();
                let Some(ah) = host.alpha.clone() else { return Err(TreeError::CurveEnd(h)) };
                let bh = Rational::from_integer(host.b.into());
                self.nodes[h].self_int -= 1;
                Node {
                    id,
                    name: format!("E{}", id),
                    creation: Creation::Free { host: h },
                    parent: Some(h),
                    b: host.b,
                    alpha: Some(ah + (&bh * &bh).recip()),
                    farey: (host.farey.0 + 1, host.farey.1),
                    self_int: -1,
                }
            }
            CenterSpec::SatelliteBetween(x, y) => {
                self.node(x)?;
                self.node(y)?;
                if !self.adjacent(x, y) {
                    return Err(TreeError::NotAdjacent(x, y));
                }
                let (lower, upper) = if self.nodes[y].parent == Some(x) { (x, y) } else { (y, x) };
                let (l, u) = (&self.nodes[lower], &self.nodes[upper]);
                let b = l.b + u.b;
                let al = l.alpha.clone().expect("lower end of an edge has finite skewness");
                let alpha = al + Rational::new(1.into(), (l.b * b).into());
                let farey = (l.farey.0 + u.farey.0, l.farey.1 + u.farey.1);
                self.nodes[lower].self_int -= 1;
                self.nodes[upper].self_int -= 1;
                self.nodes[upper].parent = Some(id);
                Node {
                    id,
                    name: format!("E{}", id),
                    creation: Creation::Satellite { lower, upper },
                    parent: Some(lower),
                    b,
                    alpha: Some(alpha),
                    farey,
                    self_int: -1,
                }
            }
        };
        self.nodes.push(node);
        Ok(id)
    }

    /// Valid blow-up centers in the current configuration: a free point on
    /// every finite node and every adjacent pair.
    pub fn centers(&self) -> Vec<CenterSpec> {
        let mut out: Vec<CenterSpec> =
            self.nodes.iter().filter(|n| !n.is_end()).map(|n| CenterSpec::FreeOn(n.id)).collect();
        out.extend(self.edges().into_iter().map(|(p, c)| CenterSpec::SatelliteBetween(p, c)));
        out
    }

    /// Checks the weights of a monomial point on the segment `[E, F]`.
    pub fn monomial_point(&self, e: NodeId, f: NodeId, s: QuadNumber, t: QuadNumber) -> Result<TreePoint, TreeError> {
        self.node(e)?;
        self.node(f)?;
        if !self.adjacent(e, f) {
            return Err(TreeError::NotAdjacent(e, f));
        }
        if self.nodes[f].parent != Some(e) {
            return Err(TreeError::Order);
        }
        if s.signum() < 0 || t.signum() < 0 || (s.is_zero() && t.is_zero()) {
            return Err(TreeError::BadWeights);
        }
        let be = int(self.nodes[e].b as i64);
        let bf = int(self.nodes[f].b as i64);
        let total = s.scale(&be).try_add(&t.scale(&bf))?;
        if total != QuadNumber::one() {
            return Err(TreeError::Normalization(total.to_string()));
        }
        Ok(TreePoint::Monomial { lower: e, upper: f, s, t })
    }

    /// Skewness of the normalized monomial valuation `v_{s,t}` on `[E, F]`:
    /// `α(E) + t / b(E)`.
    pub fn monomial_skewness(&self, e: NodeId, f: NodeId, s: QuadNumber, t: QuadNumber) -> Result<QuadNumber, TreeError> {
        let pt = self.monomial_point(e, f, s, t)?;
        self.point_alpha(&pt)
    }

    /// `None` for curve ends.
    pub fn point_alpha(&self, p: &TreePoint) -> Result<QuadNumber, TreeError> {
        match p {
            TreePoint::Node(n) => {
                self.node(*n)?.alpha.clone().map(QuadNumber::rational).ok_or(TreeError::CurveEnd(*n))
            }
            TreePoint::Monomial { lower, t, .. } => {
                let l = self.node(*lower)?;
                let al = l.alpha.clone().ok_or(TreeError::CurveEnd(*lower))?;
                Ok(t.scale(&Rational::new(1.into(), l.b.into())).add_rational(&al))
            }
        }
    }

    fn canonical(&self, p: &TreePoint) -> TreePoint {
        match p {
            TreePoint::Monomial { lower, t, .. } if t.is_zero() => TreePoint::Node(*lower),
            TreePoint::Monomial { upper, s, .. } if s.is_zero() => TreePoint::Node(*upper),
            _ => p.clone(),
        }
    }

    fn node_wedge(&self, x: NodeId, y: NodeId) -> NodeId {
        let ax = self.ancestors(x);
        let ay = self.ancestors(y);
        let mut w = ax[0];
        for (a, b) in ax.iter().zip(&ay) {
            if a != b {
                break;
            }
            w = *a;
        }
        w
    }

    /// Infimum for the tree order.
    pub fn wedge(&self, p: &TreePoint, q: &TreePoint) -> Result<TreePoint, TreeError> {
        let p = self.canonical(p);
        let q = self.canonical(q);
        match (&p, &q) {
            (TreePoint::Node(x), TreePoint::Node(y)) => Ok(TreePoint::Node(self.node_wedge(*x, *y))),
            (TreePoint::Monomial { lower, upper, .. }, TreePoint::Node(y))
            | (TreePoint::Node(y), TreePoint::Monomial { lower, upper, .. }) => {
                let m = if matches!(p, TreePoint::Monomial { .. }) { &p } else { &q };
                if self.le(*upper, *y) {
                    Ok(m.clone())
                } else {
                    Ok(TreePoint::Node(self.node_wedge(*lower, *y)))
                }
            }
            (
                TreePoint::Monomial { lower: l1, upper: u1, t: t1, .. },
                TreePoint::Monomial { lower: l2, upper: u2, t: t2, .. },
            ) => {
                if (l1, u1) == (l2, u2) {
                    // same segment: the one closer to the lower end
                    return Ok(if t1.try_cmp(t2)?.is_le() { p.clone() } else { q.clone() });
                }
                if self.le(*u1, *l2) {
                    Ok(p.clone())
                } else if self.le(*u2, *l1) {
                    Ok(q.clone())
                } else {
                    Ok(TreePoint::Node(self.node_wedge(*l1, *l2)))
                }
            }
        }
    }

    /// Affine relation between the skewness of a tree rooted at `E_q` (over
    /// a free point `q`) and the ambient skewness.
    pub fn change_root_relation(&self, e_q: NodeId, q: CenterSpec) -> Result<RootChange, TreeError> {
        match q {
            CenterSpec::SatelliteBetween(..) => Err(TreeError::SatelliteInclusion),
            CenterSpec::FreeOn(h) if h != e_q => Err(TreeError::UnknownNode(h)),
            CenterSpec::FreeOn(_) => {
                let n = self.node(e_q)?;
                let offset = n.alpha.clone().ok_or(TreeError::CurveEnd(e_q))?;
                let b = Rational::from_integer(n.b.into());
                Ok(RootChange { offset, scale: (&b * &b).recip(), multiplicity: n.b })
            }
        }
    }

    /// Graphviz rendering with `b`, `α` and the Farey label per node.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph tree {\n");
        for n in &self.nodes {
            let a = n.alpha.as_ref().map_or("inf".to_string(), |a| a.to_string());
            let _ = writeln!(
                s,
                "  n{} [label=\"{}\\nb={} alpha={} far=({},{})\"];",
                n.id, n.name, n.b, a, n.farey.0, n.farey.1
            );
        }
        for (p, c) in self.edges() {
            let _ = writeln!(s, "  n{} -- n{};", p, c);
        }
        s.push_str("}\n");
        s
    }

    /// Adjacent pairs `(lower, upper)` with finite skewness at both ends.
    pub fn finite_edges(&self) -> Vec<(NodeId, NodeId)> {
        self.edges().into_iter().filter(|&(p, c)| !self.nodes[p].is_end() && !self.nodes[c].is_end()).collect()
    }

    /// `a₂b̂₁ - a₁b̂₂` for an edge `(lower, upper)`.
    pub fn farey_determinant(&self, lower: NodeId, upper: NodeId) -> i64 {
        let (a1, b1) = self.nodes[lower].farey;
        let (a2, b2) = self.nodes[upper].farey;
        a2 as i64 * b1 as i64 - a1 as i64 * b2 as i64
    }

    /// Checks strict increase of `α` away from the root.
    pub fn alpha_increasing(&self) -> bool {
        self.edges().into_iter().all(|(p, c)| match (&self.nodes[p].alpha, &self.nodes[c].alpha) {
            (Some(a), Some(b)) => (b - a).is_positive(),
            (Some(_), None) => true,
            _ => false,
        })
    }
}

/// `α_* = offset + scale · α_{E_q}` and `b_* = multiplicity · b_{E_q}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootChange {
    pub offset: Rational,
    pub scale: Rational,
    pub multiplicity: u64,
}

impl RootChange {
    pub fn apply(&self, relative_alpha: &Rational) -> Rational {
        &self.offset + &self.scale * relative_alpha
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn qr(n: i64, d: i64) -> QuadNumber {
        QuadNumber::rational(rat(n, d))
    }

    fn example() -> (BlowupTree, NodeId, NodeId) {
        let mut t = BlowupTree::absolute();
        let f = t.blow_up(CenterSpec::FreeOn(0)).unwrap();
        let g = t.blow_up(CenterSpec::SatelliteBetween(0, f)).unwrap();
        (t, f, g)
    }

    #[test]
    fn blow_up_examples() {
        let (t, f, g) = example();
        assert_eq!((t.b(f), t.alpha(f).cloned()), (1, Some(int(2))));
        assert_eq!((t.b(g), t.alpha(g).cloned()), (2, Some(rat(3, 2))));
        assert!(t.le(0, g) && t.le(g, f) && !t.le(f, g));
        assert!(!t.adjacent(0, f));
        assert_eq!(t.node(0).unwrap().self_int, -3);
        assert_eq!(t.node(f).unwrap().self_int, -2);
        let mut r = BlowupTree::relative(0);
        let c = r.blow_up(CenterSpec::FreeOn(0)).unwrap();
        assert_eq!(r.node(c).unwrap().farey, (1, 1));
        assert!(matches!(r.blow_up(CenterSpec::SatelliteBetween(c, 5)), Err(TreeError::UnknownNode(5))));
        let mut s = BlowupTree::absolute();
        let a = s.blow_up(CenterSpec::FreeOn(0)).unwrap();
        let b = s.blow_up(CenterSpec::FreeOn(0)).unwrap();
        assert_eq!(s.blow_up(CenterSpec::SatelliteBetween(a, b)), Err(TreeError::NotAdjacent(a, b)));
    }

    #[test]
    fn monomial_skewness_examples() {
        let (t, f, g) = example();
        assert_eq!(t.monomial_skewness(0, g, qr(1, 1), qr(0, 1)).unwrap(), qr(1, 1));
        assert_eq!(t.monomial_skewness(0, g, qr(0, 1), qr(1, 2)).unwrap(), qr(3, 2));
        assert_eq!(t.monomial_skewness(0, g, qr(1, 3), qr(1, 3)).unwrap(), qr(4, 3));
        assert_eq!(t.monomial_skewness(g, f, qr(1, 3), qr(1, 3)).unwrap(), qr(5, 3));
        assert!(matches!(t.monomial_skewness(0, g, qr(1, 2), qr(1, 2)), Err(TreeError::Normalization(_))));
        assert_eq!(t.monomial_skewness(g, 0, qr(1, 3), qr(1, 3)), Err(TreeError::Order));
    }

    #[test]
    fn wedge_examples() {
        let (t, f, g) = example();
        let n = TreePoint::Node;
        assert_eq!(t.wedge(&n(f), &n(0)).unwrap(), n(0));
        assert_eq!(t.wedge(&n(f), &n(g)).unwrap(), n(g));
        assert_eq!(t.wedge(&n(g), &n(g)).unwrap(), n(g));
    }

    #[test]
    fn wedge_of_monomial_points_on_sibling_segments() {
        let mut t = BlowupTree::absolute();
        let a = t.blow_up(CenterSpec::FreeOn(0)).unwrap();
        let b = t.blow_up(CenterSpec::FreeOn(0)).unwrap();
        let p = t.monomial_point(0, a, qr(1, 2), qr(1, 2)).unwrap();
        let q = t.monomial_point(0, b, qr(2, 3), qr(1, 3)).unwrap();
        assert_eq!(t.wedge(&p, &q).unwrap(), TreePoint::Node(0));
        // a point below a node on its segment
        assert_eq!(t.wedge(&p, &TreePoint::Node(a)).unwrap(), p);
        let p2 = t.monomial_point(0, a, qr(3, 4), qr(1, 4)).unwrap();
        assert_eq!(t.wedge(&p, &p2).unwrap(), p2);
    }

    #[test]
    fn change_root_examples() {
        let t = BlowupTree::absolute();
        let rc = t.change_root_relation(0, CenterSpec::FreeOn(0)).unwrap();
        assert_eq!((rc.offset.clone(), rc.scale.clone()), (int(1), int(1)));
        let (t, f, g) = example();
        let rc = t.change_root_relation(g, CenterSpec::FreeOn(g)).unwrap();
        assert_eq!(rc.apply(&int(4)), rat(5, 2));
        assert_eq!(rc.multiplicity, 2);
        assert_eq!(t.change_root_relation(g, CenterSpec::SatelliteBetween(g, f)), Err(TreeError::SatelliteInclusion));
    }

    #[test]
    fn partner_end() {
        let mut t = BlowupTree::relative_at_satellite(0, 0);
        let g = t.blow_up(CenterSpec::SatelliteBetween(0, 1)).unwrap();
        assert_eq!(t.node(g).unwrap().farey, (1, 1));
        assert_eq!(t.b(g), 1);
        assert_eq!(t.alpha(g), Some(&int(1)));
        assert_eq!(t.blow_up(CenterSpec::FreeOn(1)), Err(TreeError::CurveEnd(1)));
        let h = t.blow_up(CenterSpec::SatelliteBetween(g, 1)).unwrap();
        assert_eq!(t.alpha(h), Some(&int(2)));
        assert!(t.alpha_increasing());
    }

    #[test]
    fn dot_export_mentions_annotations() {
        let (t, _, _) = example();
        let dot = t.to_dot();
        assert!(dot.contains("b=2 alpha=3/2 far=(1,2)"));
        assert!(dot.contains("n0 -- n2;"));
    }
}
