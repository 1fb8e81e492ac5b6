use super::eta::oracle::euler_product_brute;
use super::text::parse_series;
use super::*;
use crate::exactnum::{make_prime_field, rat, rat_int, FqElem};
use proptest::prelude::*;
use std::sync::Arc;

fn qs(terms: &[(i64, i64)], prec: i64) -> QSeries<Rational> {
    QSeries::from_terms(
        1,
        terms.iter().map(|&(e, c)| (e, rat_int(c))).collect(),
        prec,
    )
}

#[test]
fn mul_inv_basics() {
    // (1 + q)(1 - q) mod q^3 = 1 - q^2
    let a = qs(&[(0, 1), (1, 1)], 3);
    let b = qs(&[(0, 1), (1, -1)], 3);
    assert_eq!(a.mul_series(&b), qs(&[(0, 1), (2, -1)], 3));

    // inv(1 - q) mod q^4 = 1 + q + q^2 + q^3
    let c = qs(&[(0, 1), (1, -1)], 4);
    assert_eq!(c.inv_series().unwrap(), qs(&[(0, 1), (1, 1), (2, 1), (3, 1)], 4));

    // q^-1 * q^2 = q
    let l = qs(&[(-1, 1)], 5);
    let r = qs(&[(2, 1)], 5);
    let prod = l.mul_series(&r);
    assert_eq!(prod.val(), Some(1));
    assert_eq!(prod.coeff(1), Some(&rat_int(1)));

    assert!(matches!(
        QSeries::<Rational>::zero_to(1, 5).inv_series(),
        Err(crate::Error::NotInvertible)
    ));
}

#[test]
fn inv_precision_shift() {
    // val 2 and prec 7: inverse is known through q^(7-4)
    let a = qs(&[(2, 1), (3, 5)], 7);
    let inv = a.inv_series().unwrap();
    assert_eq!(inv.prec(), 3);
    assert_eq!(inv.val(), Some(-2));
    let prod = a.mul_series(&inv);
    assert_eq!(prod.coeff(0), Some(&rat_int(1)));
    assert!(prod.terms().all(|(e, c)| *e == 0 || c == &Rational::from_integer(0.into())));
}

#[test]
fn sqrt_examples() {
    // perfect square
    let a = qs(&[(0, 1), (1, 2), (2, 1)], 6);
    assert_eq!(a.sqrt_series().unwrap(), qs(&[(0, 1), (1, 1)], 6));

    // q^2 -> q
    let a = qs(&[(2, 1)], 6);
    let s = a.sqrt_series().unwrap();
    assert_eq!(s.val(), Some(1));

    // 1 + q mod q^4 -> 1 + q/2 - q^2/8 + q^3/16
    let a = qs(&[(0, 1), (1, 1)], 4);
    let s = a.sqrt_series().unwrap();
    let expected = QSeries::from_terms(
        1,
        vec![(0, rat_int(1)), (1, rat(1, 2)), (2, rat(-1, 8)), (3, rat(1, 16))],
        4,
    );
    assert_eq!(s, expected);
    // square back exactly to precision
    assert!(s.mul_series(&s).agrees_with(&a));

    assert!(matches!(
        qs(&[(1, 1)], 4).sqrt_series(),
        Err(crate::Error::OddValuation(1))
    ));
    assert!(matches!(
        qs(&[(0, 2)], 4).sqrt_series(),
        Err(crate::Error::NonSquareLeadingCoefficient)
    ));
}

#[test]
fn sqrt_over_prime_field() {
    let f13: Arc<_> = Arc::new(make_prime_field(13).unwrap());
    let elem = |n: i64| FqElem::from_int(f13.clone(), n);
    // (1 + 3q)^2 = 1 + 6q + 9q^2
    let a = QSeries::from_terms(1, vec![(0, elem(1)), (1, elem(6)), (2, elem(9))], 5);
    let s = a.sqrt_series().unwrap();
    assert!(s.mul_series(&s).agrees_with(&a));
    // canonical leading root is the least nonnegative representative
    assert_eq!(s.coeff(0), Some(&elem(1)));
}

#[test]
fn eta_leading_terms() {
    // eta(tau) = q^(1/24) (1 - q - q^2 + q^5 + q^7 - ...)
    let e = dedekind_eta(1, 24 * 8 + 1);
    assert_eq!(e.val(), Some(1));
    let expect = [(1i64, 1i64), (25, -1), (49, -1), (121, 1), (169, 1)];
    for (exp, c) in expect {
        assert_eq!(e.coeff(exp), Some(&rat_int(c)), "coefficient at {}", exp);
    }
    assert_eq!(e.coeff(73), None); // no q^(3 + 1/24) term
}

#[test]
fn eta_pentagonal_matches_brute_product() {
    for scale in [1u64, 2, 13] {
        let brute = euler_product_brute(scale, 40);
        let quotient = eta_quotient(&[(scale, 1)], 24 * 40 + scale as i64)
            .unwrap()
            .shift(-(scale as i64))
            .try_integerize()
            .unwrap();
        assert!(brute.agrees_with(&quotient), "scale {}", scale);
    }
}

#[test]
fn delta_is_eta_to_the_24() {
    // eta^24 has integer exponents and begins q - 24q^2 + 252q^3 - 1472q^4
    let delta = eta_quotient(&[(1, 24)], 24 * 8).unwrap();
    let delta = delta.try_integerize().expect("integer exponents");
    assert_eq!(delta.val(), Some(1));
    assert_eq!(delta.coeff(1), Some(&rat_int(1)));
    assert_eq!(delta.coeff(2), Some(&rat_int(-24)));
    assert_eq!(delta.coeff(3), Some(&rat_int(252)));
    assert_eq!(delta.coeff(4), Some(&rat_int(-1472)));
    // independent: 24-fold brute product
    let base = euler_product_brute(1, 7);
    let mut brute = qs(&[(0, 1)], 7);
    for _ in 0..24 {
        brute = brute.mul_series(&base);
    }
    assert!(brute.agrees_with(&delta.shift(-1)));
}

#[test]
fn kenku_eta_quotients() {
    // X = 13 eta(169t)^2 / eta(t)^2: leading term 13 q^14
    let x = eta_quotient(&[(169, 2), (1, -2)], 24 * 40)
        .unwrap()
        .scale(&rat_int(13));
    let x = x.try_integerize().expect("integer exponents");
    assert_eq!(x.val(), Some(14));
    assert_eq!(x.coeff(14), Some(&rat_int(13)));

    // Y = eta(t)^2 / eta(13t)^2: valuation -1
    let y = eta_quotient(&[(1, 2), (13, -2)], 24 * 40).unwrap();
    let y = y.try_integerize().expect("integer exponents");
    assert_eq!(y.val(), Some(-1));
    assert_eq!(y.coeff(-1), Some(&rat_int(1)));
}

#[test]
fn text_roundtrip_examples() {
    let e = dedekind_eta(1, 2 * 24 + 2);
    let s = format!("{}", e);
    let back = parse_series(&s).unwrap();
    assert_eq!(back, e);

    let laurent = qs(&[(-1, 1), (0, -3), (2, 7)], 4);
    let s = format!("{}", laurent);
    assert_eq!(parse_series(&s).unwrap(), laurent);
    assert_eq!(s, "q^(-1) - 3 + 7*q^2 + O(q^4)");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inv_is_right_inverse(terms in proptest::collection::vec((-4i64..10, -9i64..9), 1..7), lead in 1i64..5) {
        let mut a = QSeries::zero_to(1, 12);
        for (e, c) in terms {
            a.set_coeff(e.max(0) + 1, rat_int(c));
        }
        a.set_coeff(0, rat_int(lead));
        let inv = a.inv_series().unwrap();
        let prod = a.mul_series(&inv);
        prop_assert_eq!(prod.coeff(0), Some(&rat_int(1)));
        for (e, c) in prod.terms() {
            prop_assert!(*e == 0 || c.is_zero_elem());
        }
    }

    #[test]
    fn sqrt_squares_back(terms in proptest::collection::vec((1i64..10, -9i64..9), 0..6), v in 0i64..3) {
        let mut a = QSeries::zero_to(1, 14);
        a.set_coeff(0, rat_int(1));
        for (e, c) in terms {
            a.set_coeff(e, rat_int(c));
        }
        let a = a.shift(2 * v); // even valuation
        let s = a.sqrt_series().unwrap();
        prop_assert!(s.mul_series(&s).agrees_with(&a));
    }

    #[test]
    fn precision_never_increases(e1 in 0i64..5, e2 in 0i64..5, p1 in 4i64..10, p2 in 4i64..10) {
        let a = qs(&[(e1, 3)], p1);
        let b = qs(&[(e2, -2)], p2);
        prop_assert!(a.add_series(&b).prec() <= p1.min(p2));
        prop_assert!(a.mul_series(&b).prec() <= (e1 + p2).min(e2 + p1));
    }

    #[test]
    fn series_text_roundtrip(terms in proptest::collection::vec((-24i64..48, -9i64..9), 0..7), prec in 49i64..80) {
        let mut a: QSeries<Rational> = QSeries::zero_to(24, prec);
        for (e, c) in terms {
            a.set_coeff(e, rat_int(c));
        }
        let s = format!("{}", a);
        prop_assert_eq!(parse_series(&s).unwrap(), a);
    }
}
