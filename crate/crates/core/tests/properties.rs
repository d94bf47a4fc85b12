use num_bigint::BigInt;
use proptest::prelude::*;

use qbailey::configsum::{dual_transform, x_bosonic, ConfigSumQuery, PPPair};
use qbailey::qcore::*;

fn poly() -> impl Strategy<Value = QPolynomial> {
    prop::collection::vec((-6i64..30, -5i64..=5), 0..8)
        .prop_map(|t| QPolynomial::from_terms(t.into_iter().map(|(e, c)| (HalfExp(e), c))))
}

/// Series with constant term ±1 so that it is invertible.
fn unit_series(order: i64) -> impl Strategy<Value = QSeries> {
    (any::<bool>(), prop::collection::vec((1i64..order, -4i64..=4), 0..6)).prop_map(move |(neg, t)| {
        let c0 = if neg { -1 } else { 1 };
        let terms = std::iter::once((HalfExp::ZERO, c0)).chain(t.into_iter().map(|(e, c)| (HalfExp(e), c)));
        QSeries::from_terms(terms, HalfExp(order))
    })
}

/// Partition counts with parts restricted to `allowed`, by the standard
/// coin-change recurrence.
fn restricted_partitions(n_max: usize, allowed: impl Fn(usize) -> bool) -> Vec<u128> {
    let mut p = vec![0u128; n_max + 1];
    p[0] = 1;
    for part in (1..=n_max).filter(|&k| allowed(k)) {
        for n in part..=n_max {
            p[n] += p[n - part];
        }
    }
    p
}

fn int_coeffs(s: &QSeries, n_max: usize) -> Vec<u128> {
    (0..=n_max as i64)
        .map(|n| u128::try_from(s.coeff(HalfExp::int(n)).expect("within order")).expect("nonnegative"))
        .collect()
}

#[test]
fn partition_numbers_from_inverse_euler_product() {
    let n = 60;
    let s = inv_q_infinite(HalfExp::int(n as i64));
    assert_eq!(int_coeffs(&s, n), restricted_partitions(n, |_| true));
    assert_eq!(restricted_partitions(n, |_| true)[60], 966_467);
}

#[test]
fn q_binomial_at_one_is_binomial() {
    for a in 0..=14i64 {
        let mut c = BigInt::from(1);
        for b in 0..=a {
            assert_eq!(q_binomial(a, b).eval_at_one(), c, "a={a} b={b}");
            c = c * (a - b) / (b + 1);
        }
        assert!(q_binomial(a, a + 1).is_zero());
        assert!(q_binomial(a, -1).is_zero());
    }
}

proptest! {
    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &QPolynomial::one(), a.clone());
    }

    #[test]
    fn series_truncation_commutes_with_products(a in poly(), b in poly(), o in 0i64..40) {
        let order = HalfExp(o);
        let lhs = &QSeries::from_poly(&a, order) * &QSeries::from_poly(&b, order);
        let rhs = QSeries::from_poly(&(&a * &b), order);
        prop_assert!(lhs.truncate(order - HalfExp(12)).agrees_with(&rhs.truncate(order - HalfExp(12))));
    }

    #[test]
    fn inverse_is_two_sided(x in unit_series(40)) {
        let y = x.inverse().unwrap();
        let one = QSeries::one(HalfExp(40));
        prop_assert!((&x * &y).agrees_with(&one));
        prop_assert!((&y * &x).agrees_with(&one));
        prop_assert!(y.inverse().unwrap().agrees_with(&x));
    }

    #[test]
    fn q_binomial_symmetry_and_pascal(n in 1i64..18, k in 0i64..18) {
        prop_assume!(k <= n);
        prop_assert_eq!(q_binomial(n, k), q_binomial(n, n - k));
        // [n,k] = [n-1,k-1] + q^k [n-1,k]
        let pascal = &q_binomial(n - 1, k - 1) + &q_binomial(n - 1, k).shift(HalfExp::int(k));
        prop_assert_eq!(q_binomial(n, k), pascal);
        // and the mirrored recurrence: [n,k] = q^(n-k) [n-1,k-1] + [n-1,k]
        let mirrored = &q_binomial(n - 1, k - 1).shift(HalfExp::int(n - k)) + &q_binomial(n - 1, k);
        prop_assert_eq!(q_binomial(n, k), mirrored);
    }

    #[test]
    fn q_binomial_is_palindromic(n in 0i64..18, k in 0i64..18) {
        prop_assume!(k <= n);
        let b = q_binomial(n, k);
        prop_assert_eq!(b.reverse_q(HalfExp::int(k * (n - k))), b);
    }

    #[test]
    fn reversal_is_an_involution(a in poly(), s in -10i64..40) {
        prop_assert_eq!(a.reverse_q(HalfExp(s)).reverse_q(HalfExp(s)), a.clone());
    }

    #[test]
    fn canonical_text_round_trips(a in poly(), o in 0i64..60) {
        prop_assert_eq!(a.to_canonical().parse::<QPolynomial>().unwrap(), a.clone());
        let s = QSeries::from_poly(&a, HalfExp(o));
        prop_assert_eq!(s.to_canonical().parse::<QSeries>().unwrap(), s);
    }

    #[test]
    fn finite_pochhammer_inverse(k in 1i64..4, n in 0i64..10) {
        let order = HalfExp::int(30);
        let c = SignedPower::q_int(k);
        let p = QSeries::from_poly(&pochhammer(c, n as u32), order);
        let inv = inv_pochhammer(c, n, order).unwrap();
        prop_assert!((&p * &inv).agrees_with(&QSeries::one(order)));
    }

    #[test]
    fn configuration_sum_duality_is_an_involution(l in 0i64..12, idx in 0usize..6) {
        let (p, pp) = [(2, 5), (3, 5), (3, 7), (4, 7), (5, 7), (3, 8)][idx];
        let pp = PPPair::new(p, pp).unwrap();
        let (r, s, b) = (1, 1, 1);
        if let Ok(q) = ConfigSumQuery::new(pp, r, s, l, b) {
            let x = x_bosonic(&q);
            if let Ok(y) = dual_transform(&x, l, b, s) {
                prop_assert_eq!(dual_transform(&y, l, b, s).unwrap(), x);
            }
        }
    }
}
