//! Odd-degree hyperelliptic curves `y^2 = f(x)`, their closed points and
//! divisors.
//!
//! The model has a single point at infinity, which is rational and a
//! Weierstrass point; the canonical divisor is `(2g-2)*inf`.

mod divisor;
pub mod enumerate;
pub mod expansion;
mod point;
mod residue;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Poly};

pub use divisor::Divisor;
pub use enumerate::{closed_points, effective_divisors};
pub use expansion::{Laurent, LocalExpansion, PadicBranch, Uniformizer};
pub use point::CurvePoint;
pub(crate) use residue::ResidueRing;

/// A smooth projective curve `y^2 = f(x)` with `deg f = 2g+1`, `f`
/// squarefree, in odd characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticCurve {
    field: Field,
    f: Poly,
    genus: usize,
    label: Option<String>,
}

impl HyperellipticCurve {
    /// Validates and builds the curve `y^2 = f(x)`.
    pub fn new(field: &Field, f: Poly) -> Result<Self> {
        if field.characteristic() == 2 {
            return Err(Error::InvalidCurve(
                "characteristic 2 is not supported".into(),
            ));
        }
        if f.field() != field {
            return Err(Error::InvalidCurve(
                "f is defined over a different field".into(),
            ));
        }
        let deg = f.deg();
        if deg < 0 || deg % 2 == 0 {
            return Err(Error::InvalidCurve(format!(
                "deg f = {deg} must be odd (single point at infinity)"
            )));
        }
        if deg == 1 {
            return Err(Error::InvalidCurve(
                "genus 0 curves are not supported".into(),
            ));
        }
        if !f.is_squarefree() {
            return Err(Error::InvalidCurve(format!("f = {f} is not squarefree")));
        }
        Ok(HyperellipticCurve {
            field: field.clone(),
            genus: ((deg - 1) / 2) as usize,
            f,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// `K = (2g-2)*inf`.
    pub fn canonical_divisor(&self) -> Divisor {
        Divisor::single(CurvePoint::Infinity, 2 * self.genus as i64 - 2)
    }

    pub fn infinity(&self) -> CurvePoint {
        CurvePoint::Infinity
    }

    /// The rational point `(x, y)`.
    pub fn rational_point(&self, x: &FieldElement, y: &FieldElement) -> Result<CurvePoint> {
        self.closed_point(Poly::linear(x), Poly::constant(y.clone()))
    }

    /// The place over the irreducible `xminpoly` on which `y = ybranch`.
    pub fn closed_point(&self, xminpoly: Poly, ybranch: Poly) -> Result<CurvePoint> {
        self.check_xminpoly(&xminpoly)?;
        let ybranch = ybranch.rem(&xminpoly);
        if !ybranch.mul(&ybranch).sub(&self.f).rem(&xminpoly).is_zero() {
            return Err(Error::InvalidPoint(format!(
                "y = {ybranch} does not satisfy y^2 = f modulo {xminpoly}"
            )));
        }
        Ok(CurvePoint::Closed { xminpoly, ybranch })
    }

    /// The unique place over `xminpoly` when `f` is not a square modulo it.
    pub fn inert_point(&self, xminpoly: Poly) -> Result<CurvePoint> {
        self.check_xminpoly(&xminpoly)?;
        let ring = ResidueRing::new(&xminpoly);
        let fr = self.f.rem(&xminpoly);
        if fr.is_zero() || ring.is_square(&fr) {
            return Err(Error::InvalidPoint(format!(
                "f is a square modulo {xminpoly}; the places over it are not inert"
            )));
        }
        Ok(CurvePoint::Inert { xminpoly })
    }

    /// Every place of the curve lying over the irreducible `xminpoly`, in
    /// canonical order.
    pub fn places_over(&self, xminpoly: &Poly) -> Result<Vec<CurvePoint>> {
        self.check_xminpoly(xminpoly)?;
        let fr = self.f.rem(xminpoly);
        if fr.is_zero() {
            return Ok(vec![CurvePoint::Closed {
                xminpoly: xminpoly.clone(),
                ybranch: Poly::zero(&self.field),
            }]);
        }
        let ring = ResidueRing::new(xminpoly);
        match ring.sqrt(&fr) {
            None => Ok(vec![CurvePoint::Inert {
                xminpoly: xminpoly.clone(),
            }]),
            Some(b) => {
                let mut pts = vec![
                    CurvePoint::Closed {
                        xminpoly: xminpoly.clone(),
                        ybranch: b.clone(),
                    },
                    CurvePoint::Closed {
                        xminpoly: xminpoly.clone(),
                        ybranch: b.neg().rem(xminpoly),
                    },
                ];
                pts.sort();
                Ok(pts)
            }
        }
    }

    /// Image of a point under the hyperelliptic involution `y -> -y`.
    pub fn conjugate(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Closed { xminpoly, ybranch } => CurvePoint::Closed {
                xminpoly: xminpoly.clone(),
                ybranch: ybranch.neg().rem(xminpoly),
            },
            other => other.clone(),
        }
    }

    pub(crate) fn is_ramified(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Closed { ybranch, .. } => ybranch.is_zero(),
            CurvePoint::Inert { .. } => false,
        }
    }

    fn check_xminpoly(&self, p: &Poly) -> Result<()> {
        if p.field() != &self.field {
            return Err(Error::InvalidPoint(
                "x-polynomial over a different field".into(),
            ));
        }
        if !p.is_monic() || p.deg() < 1 {
            return Err(Error::InvalidPoint(format!(
                "{p} is not monic of positive degree"
            )));
        }
        if self.field.is_finite() {
            if !p.is_irreducible()? {
                return Err(Error::InvalidPoint(format!("{p} is reducible")));
            }
        } else if p.deg() != 1 {
            return Err(Error::Unsupported(
                "closed points over Q must have rational x-coordinate".into(),
            ));
        }
        Ok(())
    }

    /// Number of points over the base field when it is finite.
    pub fn rational_point_count(&self) -> Result<u64> {
        Ok(closed_points(self, 1)?.len() as u64)
    }

    /// `|#C(F_q) - (q+1)| <= 2g sqrt(q)`, checked in integers.
    pub fn satisfies_weil_bound(&self) -> Result<bool> {
        let q = self.field.order().ok_or(Error::InfiniteField)?;
        let n = BigUint::from(self.rational_point_count()?);
        let q1 = &q + 1u32;
        let diff = if n > q1 { &n - &q1 } else { &q1 - &n };
        let g2 = BigUint::from(2 * self.genus as u64);
        Ok(&diff * &diff <= &g2 * &g2 * &q)
    }
}
