use std::cmp::Ordering;

use affdyn::exactnum::{rat, spectral_radius, IntMat2, MobiusMap, ProjPoint, QuadNumber};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

fn mat(r: i64) -> impl Strategy<Value = IntMat2> {
    (-r..=r, -r..=r, -r..=r, -r..=r).prop_map(|(a, b, c, d)| IntMat2::new(a, b, c, d))
}

fn invertible(r: i64) -> impl Strategy<Value = IntMat2> {
    mat(r).prop_filter("singular", |m| m.det() != 0)
}

fn proj() -> impl Strategy<Value = ProjPoint> {
    prop_oneof![
        1 => Just(ProjPoint::Infinity),
        9 => (-50i64..=50, 1i64..=30).prop_map(|(n, d)| ProjPoint::Finite(rat(n, d))),
    ]
}

/// Products of elementary generators of GL₂(ℤ).
fn gl2z() -> impl Strategy<Value = IntMat2> {
    let gens = [
        IntMat2::new(1, 1, 0, 1),
        IntMat2::new(1, -1, 0, 1),
        IntMat2::new(1, 0, 1, 1),
        IntMat2::new(1, 0, -1, 1),
        IntMat2::new(0, 1, 1, 0),
        IntMat2::new(-1, 0, 0, 1),
    ];
    proptest::collection::vec(0usize..6, 0..6)
        .prop_map(move |w| w.into_iter().fold(IntMat2::IDENTITY, |acc, i| acc.mul(&gens[i])))
}

fn quad() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (-40i64..=40, 1i64..=12, -40i64..=40, 1i64..=12)
}

/// `⌊x · 10¹⁰⁰⌋` up to one unit, from integer square roots only.
fn decimal100(x: &QuadNumber) -> BigInt {
    let scale = BigInt::from(10).pow(100);
    let p = x.p() * num_rational::BigRational::from_integer(scale.clone());
    let p = p.floor().to_integer();
    let q = x.q();
    let (qn, qd) = (q.numer().clone(), q.denom().clone());
    let rad = &qn * &qn * BigInt::from(x.d()) * &scale * &scale;
    let root = rad.sqrt() / qd;
    if qn.is_negative() {
        p - root
    } else {
        p + root
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn spectral_radius_is_a_root(m in mat(30)) {
        prop_assume!(m.discriminant() >= 0 && m.det() != 0);
        let r = spectral_radius(&m).unwrap();
        let v = r.try_mul(&r).unwrap()
            .try_sub(&r.scale(&rat(m.trace(), 1))).unwrap()
            .add_rational(&rat(m.det(), 1));
        prop_assert!(v.is_zero(), "{} at {}", v, r);
    }

    #[test]
    fn apply_respects_composition(a in invertible(12), b in invertible(12), t in proj()) {
        let (ma, mb) = (MobiusMap::new(a).unwrap(), MobiusMap::new(b).unwrap());
        prop_assert_eq!(ma.compose(&mb).apply(&t), ma.apply(&mb.apply(&t)));
    }

    #[test]
    fn classification_is_conjugation_invariant(m in invertible(8), g in gl2z()) {
        let mm = MobiusMap::new(m).unwrap();
        let gm = MobiusMap::new(g).unwrap();
        let conj = gm.compose(&mm).compose(&gm.inverse());
        let (a, b) = (mm.classify().unwrap(), conj.classify().unwrap());
        prop_assert_eq!(a.kind, b.kind);
        prop_assert_eq!(&a.multiplier, &b.multiplier);
        if let Some(p) = &a.attracting {
            prop_assert_eq!(Some(gm.apply_quad(p).unwrap()), b.attracting.clone());
        }
        let mut da = a.derivatives.clone();
        let mut db = b.derivatives.clone();
        da.sort_by(|x, y| x.try_cmp(y).unwrap());
        db.sort_by(|x, y| x.try_cmp(y).unwrap());
        prop_assert_eq!(da, db);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn comparison_matches_decimal_expansion(d in prop::sample::select(vec![2u64, 3, 5, 6, 7, 10, 13]), x in quad(), y in quad()) {
        let x = QuadNumber::new(rat(x.0, x.1), rat(x.2, x.3), d).unwrap();
        let y = QuadNumber::new(rat(y.0, y.1), rat(y.2, y.3), d).unwrap();
        let (dx, dy) = (decimal100(&x), decimal100(&y));
        let diff = &dx - &dy;
        let exact = x.try_cmp(&y).unwrap();
        if diff.abs() > BigInt::from(4) {
            prop_assert_eq!(exact, if diff.is_negative() { Ordering::Less } else { Ordering::Greater });
        } else {
            // closer than 10⁻⁹⁹ in the same field means equal here
            prop_assert_eq!(exact, Ordering::Equal);
        }
        if dx.abs() > BigInt::from(4) {
            prop_assert_eq!(x.signum(), if dx.is_negative() { -1 } else { 1 });
        }
    }
}
