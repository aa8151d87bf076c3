use affdyn::exactnum::spectral_radius;
use affdyn::par::Exec;
use affdyn::perron::{is_weak_perron, perron_sweep, realize_as_matrix, QuadraticInteger};
use num_bigint::BigInt;
use num_traits::Signed;

/// Both roots of `T² - aT + b` scaled by `10⁵⁰`, floored.
fn roots50(a: i64, b: i64) -> (BigInt, BigInt) {
    let s = BigInt::from(10).pow(50);
    let disc = BigInt::from(a * a - 4 * b);
    let r = (disc * &s * &s).sqrt();
    let a = BigInt::from(a) * &s;
    ((&a + &r) / 2, (&a - &r) / 2)
}

/// Weak Perron by brute force: a rational largest root only needs to be at
/// least 1; otherwise compare both moduli at 50 digits.
fn oracle(a: i64, b: i64) -> bool {
    let one = BigInt::from(10).pow(50);
    let disc = a * a - 4 * b;
    let (hi, lo) = roots50(a, b);
    if hi < one {
        return false;
    }
    let r = (disc as f64).sqrt().round() as i64;
    if r * r == disc {
        return true;
    }
    lo.abs() <= hi
}

#[test]
fn weak_perron_matches_decimal_oracle() {
    let mut seen = 0;
    for a in -20..=20i64 {
        for b in -20..=20i64 {
            if a * a - 4 * b < 0 {
                continue;
            }
            let got = match QuadraticInteger::root(a, b) {
                Ok(q) => is_weak_perron(&q).unwrap(),
                Err(_) => false,
            };
            assert_eq!(got, oracle(a, b), "T² - {}T + {}", a, b);
            seen += 1;
        }
    }
    assert!(seen > 500);
}

#[test]
fn sweep_round_trips_with_nonnegative_entries() {
    let rows = perron_sweep(1..=20, -20..=20, Exec::Parallel);
    assert!(!rows.is_empty());
    for r in &rows {
        assert!(r.matrix.is_nonnegative(), "{:?}", r);
        assert!(r.round_trip, "{:?}", r);
        assert_eq!(spectral_radius(&r.matrix).unwrap(), r.value);
    }
    let expected = (1..=20i64)
        .flat_map(|a| (-20..=20i64).map(move |b| (a, b)))
        .filter(|&(a, b)| a * a - 4 * b >= 0 && oracle(a, b))
        .count();
    assert_eq!(rows.len(), expected);
}

#[test]
fn square_roots_realize() {
    for m in 2..60u64 {
        let Ok(q) = QuadraticInteger::sqrt(m) else { continue };
        let mat = realize_as_matrix(&q).unwrap();
        assert_eq!(spectral_radius(&mat).unwrap(), q.value().unwrap());
    }
}
