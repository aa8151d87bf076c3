use affdyn::boundary::{fixtures, BlowupRecord, Center, Completion, DivisorAtInfinity};
use affdyn::exactnum::{rat, QuadNumber};
use affdyn::infnear::{BlowupTree, TreePoint};
use affdyn::par::Exec;
use affdyn::valuation::{divisorial_pairings, l_v, local_dual, pair_points, LValue, Valuation};
use proptest::prelude::*;

fn q(n: i64) -> QuadNumber {
    QuadNumber::from_int(n)
}

fn markov_divisor(c: &[i64]) -> DivisorAtInfinity {
    DivisorAtInfinity::from_ints(&[("Ex", c[0]), ("Ey", c[1]), ("Ez", c[2])])
}

fn lin(v: &LValue) -> QuadNumber {
    v.finite().expect("finite value").clone()
}

/// Follows a monomial valuation through satellite blow-ups by the chart
/// computation `x = u, y = uw` or `x = zy, y = y`.
fn transport(v: Valuation, recs: &[BlowupRecord]) -> Valuation {
    recs.iter().fold(v, |v, r| match (&v, &r.center) {
        (Valuation::Monomial { at, s, t }, Center::Satellite(a, b))
            if (a == &at[0] && b == &at[1]) || (a == &at[1] && b == &at[0]) =>
        {
            let g = r.exceptional.clone();
            match s.try_cmp(t).unwrap() {
                std::cmp::Ordering::Equal => Valuation::Divisorial { divisor: g, scale: s.as_rational().unwrap().clone() },
                std::cmp::Ordering::Less => Valuation::Monomial { at: [g, at[1].clone()], s: s.clone(), t: t.try_sub(s).unwrap() },
                std::cmp::Ordering::Greater => Valuation::Monomial { at: [at[0].clone(), g], s: s.try_sub(t).unwrap(), t: t.clone() },
            }
        }
        _ => v,
    })
}

fn random_tree(picks: &[usize]) -> BlowupTree {
    let mut t = BlowupTree::absolute();
    for &k in picks {
        let cs = t.centers();
        t.blow_up(cs[k % cs.len()]).unwrap();
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn l_v_is_linear(
        d1 in proptest::collection::vec(-8i64..=8, 3),
        d2 in proptest::collection::vec(-8i64..=8, 3),
        a in (0i64..=9, 1i64..=5),
        b in (0i64..=9, 1i64..=5),
        s in 1i64..=7,
        t in 1i64..=7,
    ) {
        let x = fixtures::markov();
        let (da, db) = (markov_divisor(&d1), markov_divisor(&d2));
        let (ra, rb) = (rat(a.0, a.1), rat(b.0, b.1));
        let comb = da.scale(&ra).add(&db.scale(&rb));
        for v in [Valuation::ord("Ey"), Valuation::monomial("Ex", "Ez", q(s), q(t)).unwrap()] {
            let lhs = lin(&l_v(&v, &x, &comb).unwrap());
            let rhs = lin(&l_v(&v, &x, &da).unwrap()).scale(&ra).try_add(&lin(&l_v(&v, &x, &db).unwrap()).scale(&rb)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn l_v_takes_minimum_on_meets(
        d1 in proptest::collection::vec(0i64..=10, 3),
        d2 in proptest::collection::vec(0i64..=10, 3),
        s in 1i64..=9,
        t in 1i64..=9,
    ) {
        let x = fixtures::markov();
        let (da, db) = (markov_divisor(&d1), markov_divisor(&d2));
        let r = x.meet(&da, &db).unwrap();
        let y: &Completion = &r.completion;
        for v in [Valuation::ord("Ez"), Valuation::monomial("Ex", "Ey", q(s), q(t)).unwrap()] {
            let va = lin(&l_v(&v, &x, &da).unwrap());
            let vb = lin(&l_v(&v, &x, &db).unwrap());
            let want = if va.try_cmp(&vb).unwrap().is_le() { va } else { vb };
            let moved = transport(v.clone(), &r.blowups);
            prop_assert_eq!(lin(&l_v(&moved, y, &r.divisor).unwrap()), want);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn divisorial_pairings_agree_and_are_symmetric(picks in proptest::collection::vec(0usize..1000, 1..29)) {
        let t = random_tree(&picks);
        prop_assert!(t.len() <= 30);
        for (i, j, p) in divisorial_pairings(&t, Exec::Parallel).unwrap() {
            prop_assert!(p.agree, "{} {} {:?}", i, j, p);
        }
        // the per-pair path, with its own refinement, on a sample
        let ids: Vec<usize> = t.nodes().iter().filter(|n| !n.is_end()).map(|n| n.id).collect();
        for (&i, &j) in ids.iter().zip(ids.iter().rev()).take(4) {
            let (p, r) = (TreePoint::Node(i), TreePoint::Node(j));
            let a = pair_points(&t, &p, &r).unwrap();
            prop_assert!(a.via_intersection.is_some() && a.agree, "{} {} {:?}", i, j, a);
            prop_assert_eq!(a, pair_points(&t, &r, &p).unwrap());
        }
    }
}

#[test]
fn dual_is_rational_exactly_for_rational_slopes() {
    let mut t = BlowupTree::absolute();
    t.blow_up(affdyn::infnear::CenterSpec::FreeOn(0)).unwrap();
    let names: Vec<String> = t.nodes().iter().map(|n| n.name.clone()).collect();
    let sqrt2 = QuadNumber::sqrt_int(&2.into()).unwrap();
    for (s, rational) in [(q(1), true), (QuadNumber::rational(rat(3, 7)), true), (q(1).try_sub(&QuadNumber::rational(rat(1, 3))).unwrap(), true), (sqrt2.clone(), false)] {
        // weights normalized so that v(m_p) = s + t is rational
        let t2 = QuadNumber::from_int(2).try_sub(&s).unwrap();
        let v = Valuation::monomial(&names[0], &names[1], s, t2).unwrap();
        let z = local_dual(&t, &v).unwrap();
        assert_eq!(z.is_rational(), rational, "{:?}", z);
    }
}
