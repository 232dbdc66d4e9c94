use std::fmt;

use crate::curve::{
    expansion::PRECISION_CAP, CurvePoint, Divisor, HyperellipticCurve, PadicBranch,
};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Poly};

/// `(a(x) + b(x) y) / c(x)` with `c` monic and `gcd(a, b, c) = 1`.
///
/// This representation is unique, so structural equality is equality of
/// functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    a: Poly,
    b: Poly,
    c: Poly,
}

impl RationalFunction {
    pub fn new(a: Poly, b: Poly, c: Poly) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let field = c.field().clone();
        if a.is_zero() && b.is_zero() {
            return Ok(Self::zero(&field));
        }
        let g = a.gcd(&b).gcd(&c);
        let lc_inv = c.lead().unwrap().inv().unwrap();
        let (a, b, c) = if g.is_one() {
            (a, b, c)
        } else {
            (
                a.exact_div(&g).unwrap(),
                b.exact_div(&g).unwrap(),
                c.exact_div(&g).unwrap(),
            )
        };
        Ok(RationalFunction {
            a: a.scale(&lc_inv),
            b: b.scale(&lc_inv),
            c: c.scale(&lc_inv),
        })
    }

    pub fn from_poly(a: Poly) -> Self {
        let f = a.field().clone();
        RationalFunction {
            a,
            b: Poly::zero(&f),
            c: Poly::one(&f),
        }
    }

    pub fn constant(v: FieldElement) -> Self {
        Self::from_poly(Poly::constant(v))
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_poly(Poly::zero(field))
    }

    pub fn one(field: &Field) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn x(field: &Field) -> Self {
        Self::from_poly(Poly::x(field))
    }

    pub fn y(field: &Field) -> Self {
        RationalFunction {
            a: Poly::zero(field),
            b: Poly::one(field),
            c: Poly::one(field),
        }
    }

    pub fn field(&self) -> &Field {
        self.c.field()
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    pub fn c(&self) -> &Poly {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        let a = self.a.mul(&o.c).add(&o.a.mul(&self.c));
        let b = self.b.mul(&o.c).add(&o.b.mul(&self.c));
        Self::new(a, b, self.c.mul(&o.c)).unwrap()
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            a: self.a.neg(),
            b: self.b.neg(),
            c: self.c.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &FieldElement) -> Self {
        Self::new(self.a.scale(k), self.b.scale(k), self.c.clone()).unwrap()
    }

    /// Product, using `y^2 = f`.
    pub fn mul(&self, o: &Self, curve: &HyperellipticCurve) -> Self {
        let a = self.a.mul(&o.a).add(&self.b.mul(&o.b).mul(curve.f()));
        let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        Self::new(a, b, self.c.mul(&o.c)).unwrap()
    }

    /// `a^2 - b^2 f`, the norm of the numerator down to `k(x)`.
    pub fn numerator_norm(&self, curve: &HyperellipticCurve) -> Poly {
        self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(curve.f()))
    }

    pub fn inv(&self, curve: &HyperellipticCurve) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let norm = self.numerator_norm(curve);
        Self::new(self.c.mul(&self.a), self.c.mul(&self.b).neg(), norm)
    }

    pub fn div(&self, o: &Self, curve: &HyperellipticCurve) -> Result<Self> {
        Ok(self.mul(&o.inv(curve)?, curve))
    }

    /// Order of vanishing at a closed point (negative for poles).
    pub fn valuation(&self, curve: &HyperellipticCurve, point: &CurvePoint) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(numerator_valuation(curve, &self.a, &self.b, point)?
            - numerator_valuation(curve, &self.c, &Poly::zero(curve.field()), point)?)
    }

    /// `div(self)`, over a finite field.
    pub fn principal_divisor(&self, curve: &HyperellipticCurve) -> Result<Divisor> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let norm = self.numerator_norm(curve);
        let mut primes: Vec<Poly> = norm.factor()?.into_iter().map(|(p, _)| p).collect();
        if self.c.deg() > 0 {
            primes.extend(self.c.factor()?.into_iter().map(|(p, _)| p));
        }
        primes.sort_by(|a, b| a.cmp_canonical(b));
        primes.dedup();
        let mut div = Divisor::zero();
        div.add_point(
            CurvePoint::Infinity,
            self.valuation(curve, &CurvePoint::Infinity)?,
        );
        for p in primes {
            for place in curve.places_over(&p)? {
                let v = self.valuation(curve, &place)?;
                div.add_point(place, v);
            }
        }
        Ok(div)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "a": self.a.to_json(), "b": self.b.to_json(), "c": self.c.to_json() })
    }
}

/// Valuation of `a + b y` at `point`.
fn numerator_valuation(
    curve: &HyperellipticCurve,
    a: &Poly,
    b: &Poly,
    point: &CurvePoint,
) -> Result<i64> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let odd = 2 * curve.genus() as i64 + 1;
    let big = i64::MAX / 4;
    let vp = |q: &Poly, p: &Poly| {
        if q.is_zero() {
            big
        } else {
            q.multiplicity(p) as i64
        }
    };
    match point {
        // the two terms have pole orders of different parity
        CurvePoint::Infinity => {
            let va = if a.is_zero() { big } else { -2 * a.deg() };
            let vb = if b.is_zero() { big } else { -2 * b.deg() - odd };
            Ok(va.min(vb))
        }
        CurvePoint::Inert { xminpoly } => Ok(vp(a, xminpoly).min(vp(b, xminpoly))),
        CurvePoint::Closed { xminpoly, ybranch } if ybranch.is_zero() => {
            Ok((2 * vp(a, xminpoly)).min((2 * vp(b, xminpoly)).saturating_add(1)))
        }
        CurvePoint::Closed { xminpoly, .. } => {
            if b.is_zero() {
                return Ok(vp(a, xminpoly));
            }
            if a.is_zero() {
                // y is a unit at split places
                return Ok(vp(b, xminpoly));
            }
            // v_P(a + b y) <= v_p(a^2 - b^2 f)
            let norm = a.mul(a).sub(&b.mul(b).mul(curve.f()));
            let bound = norm.multiplicity(xminpoly) as usize;
            let precision = bound + curve.genus() + 2;
            if precision > PRECISION_CAP {
                return Err(Error::PrecisionCap(PRECISION_CAP));
            }
            let branch = PadicBranch::new(curve, point, precision)?;
            branch
                .valuation_of(a, b)
                .map(|v| v as i64)
                .ok_or(Error::PrecisionCap(precision))
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => "0".to_string(),
            (false, true) => self.a.render("x"),
            (true, false) => format!("({})*y", self.b.render("x")),
            (false, false) => format!("{} + ({})*y", self.a.render("x"), self.b.render("x")),
        };
        if self.c.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/({})", self.c.render("x"))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::LocalExpansion;

    fn elliptic_q() -> HyperellipticCurve {
        let q = Field::rationals();
        HyperellipticCurve::new(&q, Poly::from_i64s(&q, &[1, 0, 0, 1])).unwrap()
    }

    #[test]
    fn valuations_match_series_expansions() {
        let c = elliptic_q();
        let q = c.field().clone();
        let pts = [
            CurvePoint::Infinity,
            c.rational_point(&q.from_i64(-1), &q.zero()).unwrap(),
            c.rational_point(&q.from_i64(0), &q.one()).unwrap(),
            c.rational_point(&q.from_i64(2), &q.from_i64(-3)).unwrap(),
        ];
        // y - 1 vanishes to order 3 at (0, 1); x + 1 to order 2 at (-1, 0)
        let funcs = [
            RationalFunction::new(Poly::from_i64s(&q, &[-1]), Poly::one(&q), Poly::one(&q))
                .unwrap(),
            RationalFunction::from_poly(Poly::from_i64s(&q, &[1, 1])),
            RationalFunction::new(
                Poly::from_i64s(&q, &[3, 0, 1]),
                Poly::from_i64s(&q, &[0, 2]),
                Poly::one(&q),
            )
            .unwrap(),
            RationalFunction::new(Poly::from_i64s(&q, &[1, 1]), Poly::one(&q), Poly::one(&q))
                .unwrap(),
            RationalFunction::new(
                Poly::from_i64s(&q, &[1, 2, 1]),
                Poly::from_i64s(&q, &[1, 1]),
                Poly::one(&q),
            )
            .unwrap(),
        ];
        for p in &pts {
            let e = LocalExpansion::new(&c, p, 16).unwrap();
            for fun in &funcs {
                let series = e.eval(fun.a(), fun.b());
                let expected = series.valuation().unwrap();
                assert_eq!(fun.valuation(&c, p).unwrap(), expected, "{fun} at {p}");
            }
        }
        assert_eq!(funcs[0].valuation(&c, &pts[2]).unwrap(), 3);
        assert_eq!(funcs[1].valuation(&c, &pts[1]).unwrap(), 2);
    }

    #[test]
    fn normalization_is_canonical() {
        let q = Field::rationals();
        let c = elliptic_q();
        let x1 = Poly::from_i64s(&q, &[1, 1]);
        let f = RationalFunction::new(
            x1.scale(&q.from_i64(2)),
            Poly::zero(&q),
            x1.scale(&q.from_i64(4)),
        )
        .unwrap();
        assert_eq!(
            f,
            RationalFunction::constant(q.from_rational(&"1/2".parse().unwrap()).unwrap())
        );
        let y = RationalFunction::y(&q);
        let yinv = y.inv(&c).unwrap();
        assert_eq!(y.mul(&yinv, &c), RationalFunction::one(&q));
    }

    #[test]
    fn principal_divisors_over_f5() {
        let f5 = Field::prime(5).unwrap();
        let c = HyperellipticCurve::new(&f5, Poly::from_i64s(&f5, &[1, 0, 0, 1])).unwrap();
        let x = RationalFunction::x(&f5);
        let d = x.principal_divisor(&c).unwrap();
        assert_eq!(d.degree(), 0);
        assert_eq!(d.infinity_mult(), -2);
        let y = RationalFunction::y(&f5);
        assert_eq!(y.principal_divisor(&c).unwrap().infinity_mult(), -3);
    }
}
