//! Standard curves and random divisors used by the test suites and the CLI
//! experiment driver.

use rand::Rng;

use crate::curve::{closed_points, CurvePoint, Divisor, HyperellipticCurve};
use crate::error::Result;
use crate::field::{Field, Poly};

fn curve(field: Field, f: &[i64], label: &str) -> HyperellipticCurve {
    let f = Poly::from_i64s(&field, f);
    HyperellipticCurve::new(&field, f)
        .expect("fixture curve")
        .with_label(label)
}

/// `y^2 = x^3 + 1` over `Q`.
pub fn elliptic_q() -> HyperellipticCurve {
    curve(Field::rationals(), &[1, 0, 0, 1], "E: y^2 = x^3 + 1 / Q")
}

/// `y^2 = x^3 + 1` over `F_5`.
pub fn elliptic_f5() -> HyperellipticCurve {
    curve(
        Field::prime(5).unwrap(),
        &[1, 0, 0, 1],
        "E: y^2 = x^3 + 1 / F5",
    )
}

/// `y^2 = x^3 + x` over `F_3`.
pub fn elliptic_f3() -> HyperellipticCurve {
    curve(
        Field::prime(3).unwrap(),
        &[0, 1, 0, 1],
        "E: y^2 = x^3 + x / F3",
    )
}

/// `y^2 = x^5 + x + 1` over `Q`.
pub fn genus2_q() -> HyperellipticCurve {
    curve(
        Field::rationals(),
        &[1, 1, 0, 0, 0, 1],
        "C2: y^2 = x^5 + x + 1 / Q",
    )
}

/// `y^2 = x^5 + 2x + 1` over `F_7` (`x^5 + x + 1` has a repeated factor there).
pub fn genus2_f7() -> HyperellipticCurve {
    curve(
        Field::prime(7).unwrap(),
        &[1, 2, 0, 0, 0, 1],
        "C2: y^2 = x^5 + 2x + 1 / F7",
    )
}

/// `y^2 = x^5 + x + 1` over `F_5`.
pub fn genus2_f5() -> HyperellipticCurve {
    curve(
        Field::prime(5).unwrap(),
        &[1, 1, 0, 0, 0, 1],
        "C2: y^2 = x^5 + x + 1 / F5",
    )
}

/// `y^2 = x^5 + 2x^2 + 1` over `F_3`.
pub fn genus2_f3() -> HyperellipticCurve {
    curve(
        Field::prime(3).unwrap(),
        &[1, 0, 2, 0, 0, 1],
        "C2: y^2 = x^5 + 2x^2 + 1 / F3",
    )
}

/// `y^2 = x^7 + x + 1` over `F_5`.
pub fn genus3_f5() -> HyperellipticCurve {
    curve(
        Field::prime(5).unwrap(),
        &[1, 1, 0, 0, 0, 0, 0, 1],
        "C3: y^2 = x^7 + x + 1 / F5",
    )
}

/// Closed points to draw divisors from: all points of degree at most 2 over
/// a finite field; over `Q`, the places above `x = a` for `|a| <= 10`.
pub fn point_pool(curve: &HyperellipticCurve) -> Result<Vec<CurvePoint>> {
    if curve.field().is_finite() {
        return closed_points(curve, 2);
    }
    let q = curve.field();
    let mut pts = vec![CurvePoint::Infinity];
    for a in -10..=10 {
        pts.extend(curve.places_over(&Poly::linear(&q.from_i64(a)))?);
    }
    pts.sort();
    Ok(pts)
}

/// A random divisor supported on `pool` with `|deg| <= max_abs_degree`.
pub fn random_divisor<R: Rng>(pool: &[CurvePoint], max_abs_degree: i64, rng: &mut R) -> Divisor {
    loop {
        let terms = rng.gen_range(0..=4);
        let mut d = Divisor::zero();
        for _ in 0..terms {
            let p = pool[rng.gen_range(0..pool.len())].clone();
            d.add_point(p, rng.gen_range(-3..=3));
        }
        if d.degree().abs() <= max_abs_degree {
            return d;
        }
    }
}

/// The first affine rational point that is not a Weierstrass point.
pub fn first_split_point(curve: &HyperellipticCurve) -> Result<Option<CurvePoint>> {
    Ok(point_pool(curve)?.into_iter().find(|p| {
        matches!(p, CurvePoint::Closed { xminpoly, ybranch } if xminpoly.deg() == 1 && !ybranch.is_zero())
    }))
}

/// `B = P + (n/2 - 1) inf` for the first split rational point `P`, or
/// `(n/2) inf` when there is none. Requires `n >= 2` even.
pub fn standard_half(curve: &HyperellipticCurve, n: i64) -> Result<Divisor> {
    let half = n / 2;
    Ok(match first_split_point(curve)? {
        Some(p) => Divisor::from_terms([(p, 1), (CurvePoint::Infinity, half - 1)]),
        None => Divisor::single(CurvePoint::Infinity, half),
    })
}

/// Every fixture curve.
pub fn all_curves() -> Vec<HyperellipticCurve> {
    vec![
        elliptic_q(),
        elliptic_f5(),
        elliptic_f3(),
        genus2_q(),
        genus2_f7(),
        genus2_f5(),
        genus2_f3(),
        genus3_f5(),
    ]
}
