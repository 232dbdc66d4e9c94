use crate::error::{Error, Result};
use crate::field::Poly;

use super::{CurvePoint, Divisor, HyperellipticCurve};

/// All closed points of degree at most `max_degree`, in canonical order.
pub fn closed_points(curve: &HyperellipticCurve, max_degree: usize) -> Result<Vec<CurvePoint>> {
    if !curve.field().is_finite() {
        return Err(Error::InfiniteField);
    }
    let mut pts = Vec::new();
    if max_degree >= 1 {
        pts.push(CurvePoint::Infinity);
    }
    for p in Poly::monic_irreducibles(curve.field(), max_degree)? {
        for place in curve.places_over(&p)? {
            if place.degree() as usize <= max_degree {
                pts.push(place);
            }
        }
    }
    pts.sort();
    Ok(pts)
}

/// Every effective divisor of degree at most `max_degree`, each once, by
/// degree and then lexicographically on `(point, multiplicity)` pairs.
pub fn effective_divisors(curve: &HyperellipticCurve, max_degree: usize) -> Result<Vec<Divisor>> {
    let pts = closed_points(curve, max_degree)?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    collect(&pts, 0, max_degree as i64, &mut current, &mut out);
    out.sort();
    Ok(out)
}

fn collect(
    pts: &[CurvePoint],
    from: usize,
    budget: i64,
    current: &mut Vec<(CurvePoint, i64)>,
    out: &mut Vec<Divisor>,
) {
    out.push(Divisor::from_terms(current.iter().cloned()));
    for i in from..pts.len() {
        let d = pts[i].degree();
        let mut m = 1;
        while m * d <= budget {
            current.push((pts[i].clone(), m));
            collect(pts, i + 1, budget - m * d, current, out);
            current.pop();
            m += 1;
        }
    }
}
