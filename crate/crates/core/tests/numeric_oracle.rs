//! `QuadReal::to_f64` against a big-integer decimal expansion.

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use qtline::numeric::{QuadReal, Rational};

const DIGITS: u32 = 60;

/// `a + b√D` to 60 decimal digits, as a string the float parser rounds
/// correctly.
fn oracle(an: i64, ad: i64, bn: i64, bd: i64, d: i64) -> f64 {
    let scale = BigInt::from(10).pow(DIGITS);
    let den = BigInt::from(ad) * BigInt::from(bd);
    let rational = BigInt::from(an) * BigInt::from(bd) * &scale;
    // |bn·ad·scale·√D| = √(bn²·ad²·scale²·D)
    let radicand = (BigInt::from(bn) * BigInt::from(ad) * &scale).pow(2) * BigInt::from(d);
    let mut irrational = radicand.sqrt();
    if bn < 0 {
        irrational = -irrational;
    }
    let num = rational + irrational;
    let q = &num / &den;
    let sign = if q.is_negative() { "-" } else { "" };
    format!("{sign}{}e-{DIGITS}", q.abs()).parse().unwrap()
}

fn ulps(x: f64, y: f64) -> u64 {
    if x == y {
        return 0;
    }
    let key = |z: f64| {
        let b = z.to_bits() as i64;
        if b < 0 { i64::MIN - b } else { b }
    };
    (key(x) - key(y)).unsigned_abs()
}

#[test]
fn cancellation_cases() {
    // 1 + √2·(−7071/5000) suffers large cancellation in naive float evaluation
    for (an, ad, bn, bd, d) in [(1, 1, -7071, 5000, 2), (-99, 1, 70, 1, 2), (577, 1, -408, 1, 2), (-4181, 1, 1870, 1, 5)] {
        let x = QuadReal::new(Rational::new(an as i128, ad as i128), Rational::new(bn as i128, bd as i128), d).unwrap();
        let expected = oracle(an, ad, bn, bd, d);
        assert!(ulps(x.to_f64(), expected) <= 4, "{x}: {} vs {expected}", x.to_f64());
    }
}

proptest! {
    #[test]
    fn to_f64_within_four_ulps(
        an in -100_000i64..100_000, ad in 1i64..1000,
        bn in -100_000i64..100_000, bd in 1i64..1000,
        d in prop::sample::select(vec![2i64, 3, 5, 6, 7, 10, 11, 13]),
    ) {
        let x = QuadReal::new(Rational::new(an as i128, ad as i128), Rational::new(bn as i128, bd as i128), d).unwrap();
        prop_assume!(!x.is_zero());
        let expected = oracle(an, ad, bn, bd, d);
        prop_assert!(ulps(x.to_f64(), expected) <= 4, "{}: {} vs {}", x, x.to_f64(), expected);
    }
}
