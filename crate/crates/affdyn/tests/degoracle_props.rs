use affdyn::degoracle::{iterate_degrees, lambda1_estimate, monomial_degree_oracle, Poly, PolyMap, DEFAULT_TERM_CAP, PLANE_FIXTURES};
use affdyn::exactnum::{rat, spectral_radius, IntMat2};
use affdyn::par::Exec;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn sparse_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((0u32..=3, 0u32..=3, -3i64..=3), 1..4).prop_map(|terms| {
        terms.into_iter().fold(Poly::zero(), |acc, (i, j, c)| acc.add(&Poly::monomial(i, j).scale(&rat(c, 1))))
    })
}

fn sparse_map() -> impl Strategy<Value = PolyMap> {
    (sparse_poly(), sparse_poly())
        .prop_filter("zero component", |(p, q)| !p.is_zero() && !q.is_zero())
        .prop_map(|(p, q)| PolyMap::new(p, q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn composition_is_submultiplicative(f in sparse_map(), g in sparse_map()) {
        let h = f.compose(&g);
        let d = h.components.iter().filter_map(Poly::degree).max().unwrap_or(0);
        prop_assert!(d <= f.degree() * g.degree(), "{} ∘ {} has degree {}", f, g, d);
    }

    #[test]
    fn monomial_maps_match_row_sum_oracle(a in 0i64..=3, b in 0i64..=3, c in 0i64..=3, d in 0i64..=3) {
        let m = IntMat2::new(a, b, c, d);
        prop_assume!(m.det() != 0);
        let f = PolyMap::monomial(&m).unwrap();
        let got = iterate_degrees(&f, 6, DEFAULT_TERM_CAP, Exec::Sequential).unwrap();
        prop_assert_eq!(got.degrees, monomial_degree_oracle(&m, 6).unwrap());
    }
}

/// All positive matrices with entries ≤ 4.
#[test]
fn root_estimate_is_close_for_positive_matrices() {
    for a in 1..=4 {
        for b in 1..=4 {
            for c in 1..=4 {
                for d in 1..=4 {
                    let m = IntMat2::new(a, b, c, d);
                    if m.det() == 0 {
                        continue;
                    }
                    let degs = iterate_degrees(&PolyMap::monomial(&m).unwrap(), 10, DEFAULT_TERM_CAP, Exec::Sequential).unwrap().degrees;
                    assert_eq!(degs, monomial_degree_oracle(&m, 10).unwrap());
                    let rho = spectral_radius(&m).unwrap().to_f64();
                    let est = lambda1_estimate(&degs).unwrap().root;
                    assert!((est - rho).abs() / rho < 0.05, "{}: {} vs {}", m, est, rho);
                }
            }
        }
    }
}

/// A unipotent exponent matrix grows linearly, so the tenth root is far
/// from the spectral radius 1.
#[test]
fn triangular_matrices_grow_polynomially() {
    let m = IntMat2::new(1, 1, 0, 1);
    let degs = monomial_degree_oracle(&m, 10).unwrap();
    assert_eq!(degs[9], 11);
    let est = lambda1_estimate(&degs).unwrap().root;
    assert!(est > 1.27);
}

#[test]
fn plane_fixtures_match_lambda1() {
    let lambda1 = [3.0, 2.0, 3.0, (1.0 + 5f64.sqrt()) / 2.0];
    for ((name, map), l1) in PLANE_FIXTURES.iter().zip(lambda1) {
        let degs = iterate_degrees(&PolyMap::parse(map).unwrap(), 6, DEFAULT_TERM_CAP, Exec::Parallel).unwrap();
        assert!(!degs.truncated, "{}", name);
        let r = lambda1_estimate(&degs.degrees).unwrap().last_ratio;
        let r = r.to_f64().unwrap();
        assert!((r - l1).abs() / l1 < 0.10, "{}: {} vs {}", name, r, l1);
    }
}
