//! Monomial endomorphism germs at satellite points: pushforward on monomial
//! valuations, eigenvaluations, the Möbius map on skewness coordinates and
//! local normal forms. Non-monomial examples enter as recorded fixtures.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boundary::{Completion, CurveKind};
use crate::exactnum::{int, spectral_radius, ExactError, IntMat2, MobiusAnalysis, MobiusKind, MobiusMap, QuadNumber, QuadPoint, Rational};
use crate::valuation::Valuation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("exponent matrix must be nonnegative")]
    Negative,
    #[error("exponent matrix is singular")]
    Singular,
    #[error("valuation is not a monomial valuation at the source chart {0:?}")]
    WrongChart([String; 2]),
    #[error("no spectral gap: lambda1^2 = {l1sq} <= lambda2 = {l2}")]
    GapViolated { l1sq: String, l2: u64 },
    #[error("Mobius map on skewness is {0:?}, not loxodromic")]
    NotLoxodromic(MobiusKind),
    #[error("eigen equation failed for {0}")]
    EigenEquation(String),
    #[error("divisorial eigenvaluation needs lambda1 <= lambda2, got {l1} > {l2}")]
    Inconsistent { l1: String, l2: u64 },
    #[error("infinitely singular eigenvaluation needs an integer lambda1 >= 2, got {0}")]
    NotIntegral(String),
    #[error("unknown fixture '{0}'")]
    UnknownFixture(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `f(x,y) = (x^a y^b φ, x^c y^d ψ)` in coordinates adapted to `source`,
/// landing in coordinates adapted to `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialEndo {
    pub matrix: IntMat2,
    pub source: [String; 2],
    pub target: [String; 2],
    /// Unit factors φ, ψ present; they do not change values on monomial
    /// valuations.
    pub pseudomonomial: bool,
    pub tame: bool,
}

impl MonomialEndo {
    pub fn new(matrix: IntMat2) -> Result<Self, DynamicsError> {
        let chart = ["E".to_string(), "F".to_string()];
        Self::with_chart(matrix, chart.clone(), chart)
    }

    pub fn with_chart(matrix: IntMat2, source: [String; 2], target: [String; 2]) -> Result<Self, DynamicsError> {
        if !matrix.is_nonnegative() {
            return Err(DynamicsError::Negative);
        }
        if matrix.det() == 0 {
            return Err(DynamicsError::Singular);
        }
        Ok(MonomialEndo { matrix, source, target, pseudomonomial: false, tame: true })
    }

    pub fn lambda2(&self) -> u64 {
        self.matrix.det().unsigned_abs()
    }

    pub fn lambda1(&self) -> Result<QuadNumber, DynamicsError> {
        Ok(spectral_radius(&self.matrix)?)
    }

    /// `fⁿ` in the same chart; only meaningful when source and target agree.
    pub fn iterate(&self, n: u32) -> MonomialEndo {
        MonomialEndo { matrix: self.matrix.pow(n), ..self.clone() }
    }
}

/// `(as + bt, cs + dt)`.
pub fn pushforward_weights(a: &IntMat2, s: &QuadNumber, t: &QuadNumber) -> Result<(QuadNumber, QuadNumber), ExactError> {
    let ns = s.scale(&int(a.a)).try_add(&t.scale(&int(a.b)))?;
    let nt = s.scale(&int(a.c)).try_add(&t.scale(&int(a.d)))?;
    Ok((ns, nt))
}

pub fn pushforward(endo: &MonomialEndo, v: &Valuation) -> Result<Valuation, DynamicsError> {
    match v {
        Valuation::Monomial { at, s, t } if *at == endo.source => {
            let (ns, nt) = pushforward_weights(&endo.matrix, s, t)?;
            Ok(Valuation::Monomial { at: endo.target.clone(), s: ns, t: nt })
        }
        _ => Err(DynamicsError::WrongChart(endo.source.clone())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenNormalization {
    /// `t = 1` when `t ≠ 0`, otherwise `s = 1`.
    TUnit,
    /// `min(s, t) = 1` over the nonzero weights.
    MinUnit,
    /// `s·b(E) + t·b(F) = 1`.
    Weighted { b_e: u64, b_f: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValuationType {
    Divisorial,
    Irrational,
    InfinitelySingular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenData {
    pub lambda1: QuadNumber,
    pub lambda2: u64,
    /// `None` when the eigenvaluation is not representable (infinitely
    /// singular fixtures).
    pub eigenvaluation: Option<Valuation>,
    pub gap: bool,
    /// `λ₁² = λ₂`: the monomial map cannot be made algebraically stable.
    pub degenerate: bool,
    pub valuation_type: ValuationType,
}

fn gap_cmp(l1: &QuadNumber, l2: u64) -> Result<Ordering, ExactError> {
    l1.try_mul(l1)?.try_cmp(&QuadNumber::from_int(l2 as i64))
}

/// Nonnegative eigenvector of `A` for its spectral radius.
fn perron_vector(a: &IntMat2, l: &QuadNumber) -> Result<(QuadNumber, QuadNumber), ExactError> {
    let cands = [
        (QuadNumber::from_int(a.b), l.add_rational(&int(-a.a))),
        (l.add_rational(&int(-a.d)), QuadNumber::from_int(a.c)),
    ];
    let (s, t) = cands
        .into_iter()
        .find(|(s, t)| !(s.is_zero() && t.is_zero()))
        .unwrap_or_else(|| (QuadNumber::one(), QuadNumber::one()));
    if s.signum() < 0 || t.signum() < 0 {
        Ok((s.neg(), t.neg()))
    } else {
        Ok((s, t))
    }
}

fn normalize(s: QuadNumber, t: QuadNumber, mode: EigenNormalization) -> Result<(QuadNumber, QuadNumber), ExactError> {
    let k = match mode {
        EigenNormalization::TUnit => {
            if t.is_zero() {
                s.clone()
            } else {
                t.clone()
            }
        }
        EigenNormalization::MinUnit => {
            if s.is_zero() {
                t.clone()
            } else if t.is_zero() || s.try_cmp(&t)?.is_le() {
                s.clone()
            } else {
                t.clone()
            }
        }
        EigenNormalization::Weighted { b_e, b_f } => {
            s.scale(&Rational::from_integer(b_e.into())).try_add(&t.scale(&Rational::from_integer(b_f.into())))?
        }
    };
    Ok((s.try_div(&k)?, t.try_div(&k)?))
}

pub fn eigenvaluation(endo: &MonomialEndo, mode: EigenNormalization) -> Result<EigenData, DynamicsError> {
    let lambda1 = endo.lambda1()?;
    let lambda2 = endo.lambda2();
    let (s, t) = perron_vector(&endo.matrix, &lambda1)?;
    let (s, t) = normalize(s, t, mode)?;
    let (ps, pt) = pushforward_weights(&endo.matrix, &s, &t)?;
    if ps != lambda1.try_mul(&s)? || pt != lambda1.try_mul(&t)? {
        return Err(DynamicsError::EigenEquation(format!("({}, {})", s, t)));
    }
    let irrational = !s.is_zero() && !t.is_zero() && !s.try_div(&t)?.is_rational();
    let ord = gap_cmp(&lambda1, lambda2)?;
    Ok(EigenData {
        lambda1,
        lambda2,
        eigenvaluation: Some(Valuation::Monomial { at: endo.source.clone(), s, t }),
        gap: ord == Ordering::Greater,
        degenerate: ord == Ordering::Equal,
        valuation_type: if irrational { ValuationType::Irrational } else { ValuationType::Divisorial },
    })
}

/// Möbius map induced on the skewness coordinate `t` of `v_{1,t}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkewnessMobius {
    pub map: MobiusMap,
    pub analysis: MobiusAnalysis,
    pub attracting: QuadPoint,
    pub multiplier: QuadNumber,
    /// `λ₂/λ₁²`.
    pub bound_squared: QuadNumber,
    /// `multiplier² ≤ λ₂/λ₁²`, exact.
    pub within_bound: bool,
}

fn finish(map: MobiusMap, l1: &QuadNumber, l2: u64) -> Result<SkewnessMobius, DynamicsError> {
    let analysis = map.classify()?;
    if analysis.kind != MobiusKind::Loxodromic {
        return Err(DynamicsError::NotLoxodromic(analysis.kind));
    }
    let (Some(attracting), Some(multiplier)) = (analysis.attracting.clone(), analysis.multiplier.clone()) else {
        return Err(DynamicsError::NotLoxodromic(analysis.kind));
    };
    let l1sq = l1.try_mul(l1)?;
    let bound_squared = QuadNumber::from_int(l2 as i64).try_div(&l1sq)?;
    let within_bound = multiplier.try_mul(&multiplier)?.try_cmp(&bound_squared)?.is_le();
    Ok(SkewnessMobius { map, analysis, attracting, multiplier, bound_squared, within_bound })
}

fn require_gap(l1: &QuadNumber, l2: u64) -> Result<(), DynamicsError> {
    if gap_cmp(l1, l2)? != Ordering::Greater {
        return Err(DynamicsError::GapViolated { l1sq: l1.try_mul(l1)?.to_string(), l2 });
    }
    Ok(())
}

/// `M = M_f ∘ M_π⁻¹` with `M_f = [[d,c],[b,a]]`.
pub fn skewness_mobius(endo: &MonomialEndo, pi: &IntMat2) -> Result<SkewnessMobius, DynamicsError> {
    let l1 = endo.lambda1()?;
    let l2 = endo.lambda2();
    require_gap(&l1, l2)?;
    let a = &endo.matrix;
    let mf = IntMat2::new(a.d, a.c, a.b, a.a);
    let map = MobiusMap::new(mf.mul(&pi.adjugate()))?;
    finish(map, &l1, l2)
}

/// Divisorial case `f = (x^{λ₁} y^b φ, y^d ψ)` composed with the chart
/// change of slope `n₀`: `M = [[d, 0], [b - n₀, λ₁]]`, fixing `0`.
pub fn divisorial_mobius(lambda1: i64, b: i64, d: i64, n0: i64) -> Result<SkewnessMobius, DynamicsError> {
    let l2 = (lambda1 * d).unsigned_abs();
    let l1 = QuadNumber::from_int(lambda1);
    require_gap(&l1, l2)?;
    let map = MobiusMap::new(IntMat2::new(d, 0, b - n0, lambda1))?;
    finish(map, &l1, l2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalForm {
    Monomial,
    Pseudomonomial,
    InfinitelySingularType,
    DivisorialType,
    Elliptic,
}

pub fn classify_normal_form(eigen: &EigenData, boundary: CurveKind, tame: bool) -> Result<NormalForm, DynamicsError> {
    if boundary == CurveKind::Elliptic {
        return Ok(NormalForm::Elliptic);
    }
    match eigen.valuation_type {
        ValuationType::Irrational => Ok(if tame { NormalForm::Monomial } else { NormalForm::Pseudomonomial }),
        ValuationType::Divisorial => {
            if eigen.lambda1.try_cmp(&QuadNumber::from_int(eigen.lambda2 as i64))? == Ordering::Greater {
                return Err(DynamicsError::Inconsistent { l1: eigen.lambda1.to_string(), l2: eigen.lambda2 });
            }
            Ok(NormalForm::DivisorialType)
        }
        ValuationType::InfinitelySingular => match eigen.lambda1.as_rational() {
            Some(r) if r.is_integer() && *r >= int(2) => Ok(NormalForm::InfinitelySingularType),
            _ => Err(DynamicsError::NotIntegral(eigen.lambda1.to_string())),
        },
    }
}

/// Possible centers of an eigenvaluation on a completion.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum EigenCenter {
    Divisor(String),
    Free(String),
    Satellite(String, String),
}

/// Whether some valuation with this center has `Z_{v,X}² ≥ 0`, which the
/// eigenvaluation of an endomorphism with `λ₁² > λ₂` must satisfy.
pub fn eigen_center_admissible(x: &Completion, c: &EigenCenter) -> Result<bool, DynamicsError> {
    let inv = x.rat_matrix().inverse().map_err(|_| DynamicsError::Singular)?;
    let idx = |n: &str| x.index(n).map_err(|_| DynamicsError::WrongChart([n.to_string(), String::new()]));
    match c {
        EigenCenter::Divisor(e) | EigenCenter::Free(e) => {
            let i = idx(e)?;
            Ok(!inv.get(i, i).is_negative())
        }
        EigenCenter::Satellite(e, f) => {
            let (i, j) = (idx(e)?, idx(f)?);
            let (a, b, cc) = (inv.get(i, i), inv.get(i, j), inv.get(j, j));
            // a r² + 2b r + c ≥ 0 for some r > 0
            Ok(if a.is_positive() {
                true
            } else if a.is_zero() {
                b.is_positive() || !cc.is_negative()
            } else if b.is_positive() {
                !(a * cc - b * b).is_positive()
            } else {
                cc.is_positive()
            })
        }
    }
}

pub fn admissible_eigen_centers(x: &Completion) -> Result<Vec<EigenCenter>, DynamicsError> {
    let mut cands = Vec::new();
    for d in x.divisors() {
        cands.push(EigenCenter::Divisor(d.name.clone()));
        cands.push(EigenCenter::Free(d.name.clone()));
    }
    for (a, b) in x.crossings() {
        cands.push(EigenCenter::Satellite(a.clone(), b.clone()));
    }
    let mut out = Vec::new();
    for c in cands {
        if eigen_center_admissible(x, &c)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// Endomorphism with recorded dynamical data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndoFixture {
    pub name: &'static str,
    /// Polynomial map on the plane, when the example has one.
    pub map: Option<&'static str>,
    /// Monomial chart form, when the example is monomial.
    pub chart: Option<IntMat2>,
    pub lambda1: QuadNumber,
    pub lambda2: u64,
    pub valuation_type: ValuationType,
    pub eigenvaluation: Option<Valuation>,
    pub boundary: CurveKind,
    pub tame: bool,
}

impl EndoFixture {
    pub fn eigen(&self) -> Result<EigenData, DynamicsError> {
        let ord = gap_cmp(&self.lambda1, self.lambda2)?;
        Ok(EigenData {
            lambda1: self.lambda1.clone(),
            lambda2: self.lambda2,
            eigenvaluation: self.eigenvaluation.clone(),
            gap: ord == Ordering::Greater,
            degenerate: ord == Ordering::Equal,
            valuation_type: self.valuation_type,
        })
    }
}

pub const FIXTURE_NAMES: &[&str] = &["x2y3", "S2-f", "S2-g", "K3-f", "K3-g", "K3-h"];

pub fn fixture(name: &str) -> Result<EndoFixture, DynamicsError> {
    let n = |k: i64| QuadNumber::from_int(k);
    let base = |name: &'static str, l1: i64, l2: u64, vt: ValuationType| EndoFixture {
        name,
        map: None,
        chart: None,
        lambda1: n(l1),
        lambda2: l2,
        valuation_type: vt,
        eigenvaluation: None,
        boundary: CurveKind::Rational,
        tame: true,
    };
    Ok(match name {
        "x2y3" => EndoFixture {
            map: Some("x^2, y^3"),
            chart: Some(IntMat2::new(2, 1, 0, 3)),
            eigenvaluation: Some(Valuation::Monomial { at: ["E".into(), "F".into()], s: n(1), t: n(1) }),
            ..base("x2y3", 3, 6, ValuationType::Divisorial)
        },
        // blow-up of F_inf ∩ L on the S(2) completion
        "S2-f" => EndoFixture {
            map: Some("u*v, 2*v^2-1"),
            eigenvaluation: Some(Valuation::ord("E~")),
            ..base("S2-f", 2, 2, ValuationType::Divisorial)
        },
        "S2-g" => EndoFixture {
            map: Some("u*v, u^2*v^2+2*v^2-1"),
            ..base("S2-g", 3, 2, ValuationType::InfinitelySingular)
        },
        "K3-f" | "K3-g" => EndoFixture {
            eigenvaluation: Some(Valuation::ord("E")),
            boundary: CurveKind::Elliptic,
            ..base(if name == "K3-f" { "K3-f" } else { "K3-g" }, 2, 2, ValuationType::Divisorial)
        },
        "K3-h" => EndoFixture {
            eigenvaluation: Some(Valuation::ord("E")),
            boundary: CurveKind::Elliptic,
            ..base("K3-h", 4, 4, ValuationType::Divisorial)
        },
        other => return Err(DynamicsError::UnknownFixture(other.to_string())),
    })
}

/// Endomorphism input as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EndoSpec {
    Monomial {
        matrix: [[i64; 2]; 2],
        #[serde(default = "default_tame")]
        tame: bool,
    },
    Fixture { name: String },
}

fn default_tame() -> bool {
    true
}

impl EndoSpec {
    pub fn eigen(&self) -> Result<(EigenData, CurveKind, bool), DynamicsError> {
        match self {
            EndoSpec::Monomial { matrix, tame } => {
                let mut e = MonomialEndo::new(IntMat2::from_rows(*matrix))?;
                e.tame = *tame;
                Ok((eigenvaluation(&e, EigenNormalization::TUnit)?, CurveKind::Rational, *tame))
            }
            EndoSpec::Fixture { name } => {
                let f = fixture(name)?;
                Ok((f.eigen()?, f.boundary, f.tame))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::fixtures;
    use crate::exactnum::rat;

    fn q(n: i64, d: i64) -> QuadNumber {
        QuadNumber::rational(rat(n, d))
    }

    fn phi() -> QuadNumber {
        QuadNumber::new(rat(1, 2), rat(1, 2), 5).unwrap()
    }

    #[test]
    fn pushforward_examples() {
        let e = MonomialEndo::new(IntMat2::new(2, 1, 0, 3)).unwrap();
        let v = Valuation::monomial("E", "F", q(1, 1), q(1, 1)).unwrap();
        assert_eq!(pushforward(&e, &v).unwrap(), Valuation::monomial("E", "F", q(3, 1), q(3, 1)).unwrap());
        let e = MonomialEndo::new(IntMat2::new(1, 0, 1, 1)).unwrap();
        let v = Valuation::monomial("E", "F", q(1, 1), q(2, 5)).unwrap();
        assert_eq!(pushforward(&e, &v).unwrap(), Valuation::monomial("E", "F", q(1, 1), q(7, 5)).unwrap());
        let e = MonomialEndo::new(IntMat2::IDENTITY).unwrap();
        assert_eq!(pushforward(&e, &v).unwrap(), v);
        assert!(matches!(pushforward(&e, &Valuation::ord("E")), Err(DynamicsError::WrongChart(_))));
        assert_eq!(MonomialEndo::new(IntMat2::new(1, -1, 0, 1)), Err(DynamicsError::Negative));
    }

    #[test]
    fn eigen_examples() {
        let e = MonomialEndo::new(IntMat2::new(2, 1, 0, 3)).unwrap();
        let d = eigenvaluation(&e, EigenNormalization::TUnit).unwrap();
        assert_eq!(d.lambda1, q(3, 1));
        assert_eq!(d.lambda2, 6);
        assert!(d.gap);
        assert_eq!(d.valuation_type, ValuationType::Divisorial);
        assert_eq!(d.eigenvaluation, Some(Valuation::monomial("E", "F", q(1, 1), q(1, 1)).unwrap()));

        let e = MonomialEndo::new(IntMat2::new(1, 1, 1, 0)).unwrap();
        let d = eigenvaluation(&e, EigenNormalization::TUnit).unwrap();
        assert_eq!(d.lambda1, phi());
        assert_eq!(d.valuation_type, ValuationType::Irrational);
        assert_eq!(d.eigenvaluation, Some(Valuation::monomial("E", "F", phi(), q(1, 1)).unwrap()));

        let e = MonomialEndo::new(IntMat2::new(2, 0, 0, 2)).unwrap();
        let d = eigenvaluation(&e, EigenNormalization::TUnit).unwrap();
        assert!(!d.gap && d.degenerate);

        let e = MonomialEndo::new(IntMat2::new(2, 0, 1, 3)).unwrap();
        let d = eigenvaluation(&e, EigenNormalization::Weighted { b_e: 1, b_f: 2 }).unwrap();
        assert_eq!(d.eigenvaluation, Some(Valuation::monomial("E", "F", q(0, 1), q(1, 2)).unwrap()));
    }

    #[test]
    fn mobius_on_skewness() {
        let e = MonomialEndo::new(IntMat2::new(2, 1, 0, 3)).unwrap();
        let m = skewness_mobius(&e, &IntMat2::IDENTITY).unwrap();
        assert_eq!(m.attracting, QuadPoint::Finite(q(1, 1)));
        assert_eq!(m.multiplier, q(2, 3));
        assert!(m.within_bound);

        let e = MonomialEndo::new(IntMat2::new(1, 1, 1, 0)).unwrap();
        let m = skewness_mobius(&e, &IntMat2::IDENTITY).unwrap();
        // slope of the eigenvector (φ, 1)
        assert_eq!(m.attracting, QuadPoint::Finite(QuadNumber::new(rat(-1, 2), rat(1, 2), 5).unwrap()));
        let inv_phi_sq = QuadNumber::one().try_div(&phi().try_mul(&phi()).unwrap()).unwrap();
        assert_eq!(m.multiplier, inv_phi_sq.neg());
        assert!(m.within_bound);

        let e = MonomialEndo::new(IntMat2::new(2, 0, 0, 2)).unwrap();
        assert!(matches!(skewness_mobius(&e, &IntMat2::IDENTITY), Err(DynamicsError::GapViolated { .. })));
    }

    #[test]
    fn divisorial_case() {
        let m = divisorial_mobius(3, 1, 2, 0).unwrap();
        assert_eq!(m.attracting, QuadPoint::Finite(q(0, 1)));
        assert_eq!(m.multiplier, q(2, 3));
        assert!(m.within_bound);
        assert_eq!(m.map.matrix(), IntMat2::new(2, 0, 1, 3));
    }

    #[test]
    fn normal_forms() {
        let e = MonomialEndo::new(IntMat2::new(1, 1, 1, 0)).unwrap();
        let d = eigenvaluation(&e, EigenNormalization::TUnit).unwrap();
        assert_eq!(classify_normal_form(&d, CurveKind::Rational, true).unwrap(), NormalForm::Monomial);
        assert_eq!(classify_normal_form(&d, CurveKind::Rational, false).unwrap(), NormalForm::Pseudomonomial);
        let e = MonomialEndo::new(IntMat2::new(2, 1, 0, 3)).unwrap();
        let d = eigenvaluation(&e, EigenNormalization::TUnit).unwrap();
        assert_eq!(classify_normal_form(&d, CurveKind::Rational, true).unwrap(), NormalForm::DivisorialType);
        let g = fixture("S2-g").unwrap().eigen().unwrap();
        assert_eq!(classify_normal_form(&g, CurveKind::Rational, true).unwrap(), NormalForm::InfinitelySingularType);
        let h = fixture("K3-h").unwrap();
        assert_eq!(classify_normal_form(&h.eigen().unwrap(), h.boundary, true).unwrap(), NormalForm::Elliptic);
        let bad = EigenData { lambda1: q(5, 1), lambda2: 4, ..h.eigen().unwrap() };
        assert!(matches!(classify_normal_form(&bad, CurveKind::Rational, true), Err(DynamicsError::Inconsistent { .. })));
    }

    #[test]
    fn s2_eigen_centers() {
        let x = fixtures::s2();
        let got = admissible_eigen_centers(&x).unwrap();
        assert_eq!(
            got,
            vec![
                EigenCenter::Divisor("L".into()),
                EigenCenter::Free("L".into()),
                EigenCenter::Satellite("F_inf".into(), "L".into()),
            ]
        );
    }

    #[test]
    fn endo_json() {
        let s: EndoSpec = serde_json::from_str(r#"{"kind":"monomial","matrix":[[2,1],[0,3]],"tame":true}"#).unwrap();
        assert_eq!(s.eigen().unwrap().0.lambda1, q(3, 1));
        let s: EndoSpec = serde_json::from_str(r#"{"kind":"fixture","name":"S2-g"}"#).unwrap();
        assert_eq!(s.eigen().unwrap().0.lambda1, q(3, 1));
    }
}
