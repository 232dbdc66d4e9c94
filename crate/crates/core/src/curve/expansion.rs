//! Local expansions of the coordinate functions at a place.
//!
//! [`LocalExpansion`] writes `x` and `y` as truncated Laurent series in a
//! uniformizer at rational places and at infinity:
//!
//! * rational non-Weierstrass point `(a, b)`: uniformizer `x - a`;
//! * rational Weierstrass point `(a, 0)`: uniformizer `y`;
//! * infinity: uniformizer `t = y / x^(g+1)`.
//!
//! [`PadicBranch`] handles unramified split places of any degree by lifting
//! the branch of `y` to `k[x]/(p^N)` (a `p`-adic expansion with residue
//! field coefficients).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Poly};

use super::{CurvePoint, HyperellipticCurve};

/// Hard cap on the number of series terms or `p`-adic digits.
pub const PRECISION_CAP: usize = 512;

/// `sum coeffs[i] t^(start+i) + O(t^(start+len))`.
#[derive(Clone, PartialEq, Eq)]
pub struct Laurent {
    field: Field,
    start: i64,
    coeffs: Vec<FieldElement>,
}

impl Laurent {
    pub fn new(field: &Field, start: i64, coeffs: Vec<FieldElement>) -> Self {
        Laurent {
            field: field.clone(),
            start,
            coeffs,
        }
    }

    /// A constant known to absolute precision `O(t^prec)`.
    pub fn constant(c: &FieldElement, prec: i64) -> Self {
        let field = c.field().clone();
        if prec <= 0 {
            return Laurent::new(&field, prec, Vec::new());
        }
        let mut coeffs = vec![field.zero(); prec as usize];
        coeffs[0] = c.clone();
        Laurent::new(&field, 0, coeffs)
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Exponent of the error term.
    pub fn abs_prec(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    /// Certified valuation: `None` if every known coefficient vanishes.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.start + i as i64)
    }

    pub fn coeff(&self, exp: i64) -> FieldElement {
        let idx = exp - self.start;
        if idx < 0 {
            return self.field.zero();
        }
        self.coeffs
            .get(idx as usize)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let start = self.start.min(o.start);
        let end = self.abs_prec().min(o.abs_prec());
        let coeffs = (start..end).map(|e| self.coeff(e) + o.coeff(e)).collect();
        Laurent::new(&self.field, start, coeffs)
    }

    pub fn neg(&self) -> Laurent {
        Laurent::new(
            &self.field,
            self.start,
            self.coeffs.iter().map(|c| -c).collect(),
        )
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> Laurent {
        Laurent::new(
            &self.field,
            self.start,
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let start = self.start + o.start;
        let end = (self.abs_prec() + o.start).min(o.abs_prec() + self.start);
        let len = (end - start).max(0) as usize;
        let mut coeffs = vec![self.field.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Laurent::new(&self.field, start, coeffs)
    }

    /// Drops leading zero coefficients.
    fn normalized(&self) -> Laurent {
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        Laurent::new(
            &self.field,
            self.start + skip as i64,
            self.coeffs[skip..].to_vec(),
        )
    }

    /// Multiplicative inverse; fails when no nonzero coefficient is known.
    pub fn inverse(&self) -> Result<Laurent> {
        let s = self.normalized();
        if s.coeffs.is_empty() {
            return Err(Error::PrecisionCap(PRECISION_CAP));
        }
        let n = s.coeffs.len();
        let c0inv = s.coeffs[0].inv().unwrap();
        let mut inv = vec![self.field.zero(); n];
        inv[0] = c0inv.clone();
        for k in 1..n {
            let mut acc = self.field.zero();
            for j in 1..=k {
                acc = &acc + &(&s.coeffs[j] * &inv[k - j]);
            }
            inv[k] = -(&acc * &c0inv);
        }
        Ok(Laurent::new(&self.field, -s.start, inv))
    }

    pub fn pow(&self, k: u32) -> Laurent {
        if k == 0 {
            return Laurent::constant(&self.field.one(), self.coeffs.len().max(1) as i64);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(p: &Poly, x: &Laurent) -> Laurent {
        let field = p.field();
        let Some(deg) = p.degree() else {
            return Laurent::new(field, i64::MAX / 4, Vec::new());
        };
        let big = x.coeffs.len() as i64 + (x.start.abs() + 1) * (deg as i64 + 1) + 1;
        let mut acc = Laurent::constant(p.lead().unwrap(), big);
        for i in (0..deg).rev() {
            acc = acc.mul(x).add(&Laurent::constant(&p.coeff(i), big));
        }
        acc
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}*t^{}", self.start + i as i64))
            .collect();
        write!(f, "{} + O(t^{})", terms.join(" + "), self.abs_prec())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Uniformizer {
    /// `x - a` at a rational point that is not a Weierstrass point.
    XMinusA(FieldElement),
    /// `y` at a rational Weierstrass point.
    Y,
    /// `y / x^(g+1)` at infinity.
    InfinityT,
}

/// `x` and `y` as Laurent series in a uniformizer at a rational place.
#[derive(Clone, Debug)]
pub struct LocalExpansion {
    pub point: CurvePoint,
    pub uniformizer: Uniformizer,
    pub x: Laurent,
    pub y: Laurent,
    pub precision: usize,
}

impl LocalExpansion {
    /// Expansion with `precision` known terms of each coordinate series.
    pub fn new(curve: &HyperellipticCurve, point: &CurvePoint, precision: usize) -> Result<Self> {
        if precision > PRECISION_CAP {
            return Err(Error::PrecisionCap(PRECISION_CAP));
        }
        let field = curve.field();
        let n = precision.max(2);
        match point {
            CurvePoint::Infinity => {
                let g = curve.genus();
                // w = 1/x, z = y w^(g+1):  z^2 = w * rev(f)(w)
                let fc = curve.f().coeffs();
                let mut gc = vec![field.zero()];
                gc.extend(fc.iter().rev().cloned());
                let big_g = Poly::new(field, gc);
                let w = Laurent::new(field, 0, solve_ramified(&big_g, n + 2 * g + 4));
                let x = w.inverse()?;
                let z = Laurent::new(field, 1, {
                    let mut v = vec![field.one()];
                    v.resize(n + 2 * g + 4, field.zero());
                    v
                });
                let y = z.mul(&x.pow(g as u32 + 1));
                Ok(LocalExpansion {
                    point: point.clone(),
                    uniformizer: Uniformizer::InfinityT,
                    x: truncate(&x, n),
                    y: truncate(&y, n),
                    precision: n,
                })
            }
            CurvePoint::Closed { xminpoly, ybranch } if xminpoly.deg() == 1 => {
                let a = -xminpoly.coeff(0);
                let shifted = curve
                    .f()
                    .compose(&Poly::new(field, vec![a.clone(), field.one()]));
                if ybranch.is_zero() {
                    let u = solve_ramified(&shifted, n);
                    let mut xs = u;
                    xs[0] = &xs[0] + &a;
                    let mut ys = vec![field.zero(), field.one()];
                    ys.resize(n, field.zero());
                    Ok(LocalExpansion {
                        point: point.clone(),
                        uniformizer: Uniformizer::Y,
                        x: Laurent::new(field, 0, xs),
                        y: Laurent::new(field, 0, ys),
                        precision: n,
                    })
                } else {
                    let b = ybranch.coeff(0);
                    let two_b_inv = (&b + &b).inv().unwrap();
                    let mut ys = vec![b];
                    for k in 1..n {
                        let mut acc = shifted.coeff(k);
                        for i in 1..k {
                            acc = &acc - &(&ys[i] * &ys[k - i]);
                        }
                        ys.push(&acc * &two_b_inv);
                    }
                    let mut xs = vec![a.clone(), field.one()];
                    xs.resize(n, field.zero());
                    Ok(LocalExpansion {
                        point: point.clone(),
                        uniformizer: Uniformizer::XMinusA(a),
                        x: Laurent::new(field, 0, xs),
                        y: Laurent::new(field, 0, ys),
                        precision: n,
                    })
                }
            }
            _ => Err(Error::Unsupported(format!(
                "series expansion at the non-rational place {point}; use PadicBranch"
            ))),
        }
    }

    /// `a(x) + b(x) y` as a Laurent series.
    pub fn eval(&self, a: &Poly, b: &Poly) -> Laurent {
        let ax = Laurent::eval_poly(a, &self.x);
        if b.is_zero() {
            return ax;
        }
        let bx = Laurent::eval_poly(b, &self.x).mul(&self.y);
        if a.is_zero() {
            return bx;
        }
        ax.add(&bx)
    }
}

fn truncate(s: &Laurent, n: usize) -> Laurent {
    Laurent::new(
        &s.field,
        s.start,
        s.coeffs.iter().take(n).cloned().collect(),
    )
}

/// Power series `u = sum_{i<n} u_i t^i` with `F(u(t)) = t^2`, for `F(0) = 0`
/// and `F'(0) != 0`.
fn solve_ramified(big_f: &Poly, n: usize) -> Vec<FieldElement> {
    let field = big_f.field().clone();
    let f1_inv = big_f.coeff(1).inv().expect("simple root");
    let mut u = vec![field.zero(); n];
    // each pass fixes at least two more coefficients
    for _ in 0..n / 2 + 2 {
        let us = Laurent::new(&field, 0, u.clone());
        // F(u) - F_1 u
        let mut higher = Laurent::constant(&field.zero(), n as i64);
        let mut power = us.clone();
        for k in 2..=big_f.deg().max(1) as usize {
            power = power.mul(&us);
            higher = higher.add(&power.scale(&big_f.coeff(k)));
        }
        let mut next = vec![field.zero(); n];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut v = -higher.coeff(i as i64);
            if i == 2 {
                v = &v + &field.one();
            }
            *slot = &v * &f1_inv;
        }
        u = next;
    }
    u
}

/// The branch of `y` at a split place `(p, b)` lifted to `k[x]/(p^N)`.
#[derive(Clone, Debug)]
pub struct PadicBranch {
    pub xminpoly: Poly,
    /// `Y` with `Y^2 = f (mod p^N)` and `Y = b (mod p)`.
    pub lift: Poly,
    /// `p^N`
    pub modulus: Poly,
    pub precision: usize,
}

impl PadicBranch {
    pub fn new(curve: &HyperellipticCurve, point: &CurvePoint, precision: usize) -> Result<Self> {
        let CurvePoint::Closed { xminpoly, ybranch } = point else {
            return Err(Error::Precondition(format!("{point} is not a split place")));
        };
        if ybranch.is_zero() {
            return Err(Error::Precondition(format!("{point} is ramified")));
        }
        if precision > PRECISION_CAP {
            return Err(Error::PrecisionCap(PRECISION_CAP));
        }
        let n = precision.max(1);
        let f = curve.f();
        let mut y = ybranch.clone();
        let mut prec = 1;
        while prec < n {
            prec = (2 * prec).min(n);
            let m = xminpoly.pow(prec as u32);
            let two_y = y.add(&y).rem(&m);
            let inv = two_y.inv_mod(&m).expect("2y is a unit at a split place");
            let err = y.mul(&y).sub(f).rem(&m);
            y = y.sub(&err.mul_mod(&inv, &m)).rem(&m);
        }
        let modulus = xminpoly.pow(n as u32);
        Ok(PadicBranch {
            xminpoly: xminpoly.clone(),
            lift: y.rem(&modulus),
            modulus,
            precision: n,
        })
    }

    /// `(a + b Y) mod p^N`.
    pub fn eval(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(&b.mul(&self.lift)).rem(&self.modulus)
    }

    /// Valuation of `a + b y`, or `None` if it vanishes to the working precision.
    pub fn valuation_of(&self, a: &Poly, b: &Poly) -> Option<usize> {
        let h = self.eval(a, b);
        if h.is_zero() {
            return None;
        }
        Some(h.multiplicity(&self.xminpoly) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elliptic() -> HyperellipticCurve {
        let q = Field::rationals();
        HyperellipticCurve::new(&q, Poly::from_i64s(&q, &[1, 0, 0, 1])).unwrap()
    }

    fn residual(curve: &HyperellipticCurve, e: &LocalExpansion) -> Laurent {
        let fx = Laurent::eval_poly(curve.f(), &e.x);
        e.y.mul(&e.y).sub(&fx)
    }

    #[test]
    fn expansions_satisfy_the_curve_equation() {
        let c = elliptic();
        let q = c.field().clone();
        let pts = [
            CurvePoint::Infinity,
            c.rational_point(&q.from_i64(-1), &q.zero()).unwrap(),
            c.rational_point(&q.from_i64(2), &q.from_i64(3)).unwrap(),
        ];
        for p in pts {
            let e = LocalExpansion::new(&c, &p, 12).unwrap();
            let r = residual(&c, &e);
            assert!(r.coeffs().iter().all(|c| c.is_zero()), "{p}: {r:?}");
            assert!(
                r.abs_prec() >= e.x.start() * 3 + 8,
                "{p}: too little precision"
            );
        }
    }

    #[test]
    fn pole_orders_at_infinity() {
        let c = elliptic();
        let e = LocalExpansion::new(&c, &CurvePoint::Infinity, 8).unwrap();
        assert_eq!(e.x.valuation(), Some(-2));
        assert_eq!(e.y.valuation(), Some(-3));
    }

    #[test]
    fn padic_lift_squares_to_f() {
        let f5 = Field::prime(5).unwrap();
        let c = HyperellipticCurve::new(&f5, Poly::from_i64s(&f5, &[1, 1, 0, 0, 0, 1])).unwrap();
        for p in Poly::monic_irreducibles(&f5, 2).unwrap() {
            for place in c.places_over(&p).unwrap() {
                if let CurvePoint::Closed { ybranch, .. } = &place {
                    if ybranch.is_zero() {
                        continue;
                    }
                    let br = PadicBranch::new(&c, &place, 6).unwrap();
                    let err = br.lift.mul(&br.lift).sub(c.f()).rem(&br.modulus);
                    assert!(err.is_zero());
                }
            }
        }
    }
}
