use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

use semistab::bounds::{
    clifford_sandwich, compute_m, parse_decimal, theorem1_delta0, theorem2_bound, BoundInputs,
    Theorem2Outcome,
};
use semistab::extension::half_class_helper;
use semistab::fixtures;

fn inputs(n: i64, g: i64, m: i64, deg_f: i64, c1sq: BigRational, k: i64) -> BoundInputs {
    BoundInputs {
        n,
        g,
        m,
        deg_f,
        c1sq,
        k,
    }
}

fn applicable(b: &BoundInputs) -> (BigRational, BigRational) {
    match theorem2_bound(b).unwrap() {
        Theorem2Outcome::Applicable { a, bound, .. } => {
            (parse_decimal(&a).unwrap(), parse_decimal(&bound).unwrap())
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn reference_case() {
    let b = inputs(4, 2, 2, 1, BigRational::from_integer(0.into()), 4);
    let (a, bound) = applicable(&b);
    // 1/4 + ln 10, rounded to 50 places
    assert_eq!(
        a,
        parse_decimal("2.55258509299404568401799145468436420760110148862877").unwrap()
    );
    assert_eq!(bound, -a);
    let gated = inputs(4, 2, 2, 1, BigRational::from_integer(0.into()), 3);
    assert_eq!(
        theorem2_bound(&gated).unwrap(),
        Theorem2Outcome::NotApplicable {
            k: 3,
            required_k: 4
        }
    );
}

proptest! {
    #[test]
    fn bound_is_linear_in_c1sq(
        half in 1i64..20, g in 0i64..6, extra in 0i64..6, deg_f in 1i64..5,
        p in -10_000i64..10_000, q in 1i64..500, dk in 0i64..4,
    ) {
        let n = 2 * half;
        let m = half + extra.min((g - 1).max(0));
        let k = (n - m + g + dk).min(n + g - 1);
        prop_assume!(k >= n - m + g && k >= 1);
        let c = BigRational::new(BigInt::from(p), BigInt::from(q));
        let (a0, b0) = applicable(&inputs(n, g, m, deg_f, BigRational::from_integer(0.into()), k));
        let (a1, b1) = applicable(&inputs(n, g, m, deg_f, c.clone(), k));
        prop_assert_eq!(a0, a1);
        let slope = c / BigRational::from_integer(BigInt::from(2 * n * deg_f));
        // both sides are rounded once to 50 places
        let diff = (b1 - b0 - slope).abs();
        prop_assert!(diff <= BigRational::new(1.into(), BigInt::from(10).pow(50)));
    }

    #[test]
    fn delta0_matches_the_secant_index(d in 0i64..20, g in 0i64..8) {
        let n = 2 * d + 2;
        prop_assume!(n > 2 * g - 2);
        prop_assert_eq!(theorem1_delta0(n, g, n / 2), d + g);
    }
}

#[test]
fn m_lies_in_the_clifford_sandwich() {
    for c in fixtures::all_curves() {
        let g = c.genus() as i64;
        for n in [2, 4, 6, 8, 10] {
            let b = fixtures::standard_half(&c, n).unwrap();
            let (_, m_div) = half_class_helper(&c, &b);
            let m = compute_m(&c, &m_div).unwrap() as i64;
            let (lo, hi) = clifford_sandwich(n, g);
            assert!(
                lo <= m && m <= hi,
                "m = {m} for n = {n} on {}",
                c.label().unwrap_or("?")
            );
            if n > 2 * g - 2 {
                assert_eq!(m, n / 2);
            }
        }
    }
}

#[test]
fn invalid_inputs_are_rejected() {
    let zero = || BigRational::from_integer(0.into());
    assert!(theorem2_bound(&inputs(3, 2, 2, 1, zero(), 4)).is_err());
    assert!(theorem2_bound(&inputs(4, 2, 5, 1, zero(), 4)).is_err());
    assert!(theorem2_bound(&inputs(4, 2, 2, 0, zero(), 4)).is_err());
    assert!(theorem2_bound(&inputs(4, 2, 2, 1, zero(), 6)).is_err());
}

#[test]
fn delta0_reference_values() {
    assert_eq!(theorem1_delta0(8, 2, 4), 5);
    assert_eq!(theorem1_delta0(2, 1, 1), 1);
    for n in (2..=20).step_by(2) {
        assert_eq!(clifford_sandwich(n, 0), (n / 2, n / 2));
        assert_eq!(theorem1_delta0(n, 0, n / 2), (n - 2) / 2);
    }
}

#[test]
fn shifting_c1sq_by_2n_deg_f_raises_the_bound_by_one() {
    let base = inputs(6, 3, 4, 2, parse_decimal("-7/3").unwrap(), 6);
    let mut shifted = base.clone();
    shifted.c1sq += BigRational::from_integer(BigInt::from(2 * 6 * 2));
    let (_, b0) = applicable(&base);
    let (_, b1) = applicable(&shifted);
    assert_eq!(b1 - b0, BigRational::from_integer(1.into()));
}
