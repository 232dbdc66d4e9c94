use std::cmp::Ordering;
use std::fmt;

use crate::field::Poly;

/// A closed point (place) of the curve.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    /// The place over the irreducible `xminpoly` on which `y = ybranch`
    /// (mod `xminpoly`); Weierstrass points have `ybranch = 0`. Degree
    /// equals `deg xminpoly`.
    Closed {
        xminpoly: Poly,
        ybranch: Poly,
    },
    /// The single place over `xminpoly` when `f` is a non-square modulo it.
    /// Degree is `2 deg xminpoly`.
    Inert {
        xminpoly: Poly,
    },
}

impl CurvePoint {
    pub fn degree(&self) -> i64 {
        match self {
            CurvePoint::Infinity => 1,
            CurvePoint::Closed { xminpoly, .. } => xminpoly.deg(),
            CurvePoint::Inert { xminpoly } => 2 * xminpoly.deg(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn xminpoly(&self) -> Option<&Poly> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Closed { xminpoly, .. } | CurvePoint::Inert { xminpoly } => Some(xminpoly),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            CurvePoint::Infinity => serde_json::Value::String("infinity".into()),
            CurvePoint::Closed { xminpoly, ybranch } => {
                if xminpoly.deg() == 1 {
                    serde_json::json!({
                        "x": (-xminpoly.coeff(0)).to_json(),
                        "y": ybranch.coeff(0).to_json(),
                    })
                } else {
                    serde_json::json!({ "x": xminpoly.to_json(), "y": ybranch.to_json() })
                }
            }
            CurvePoint::Inert { xminpoly } => {
                if xminpoly.deg() == 1 {
                    serde_json::json!({ "x": (-xminpoly.coeff(0)).to_json(), "y": "inert" })
                } else {
                    serde_json::json!({ "x": xminpoly.to_json(), "y": "inert" })
                }
            }
        }
    }
}

impl Ord for CurvePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        use CurvePoint::*;
        match (self, other) {
            (Infinity, Infinity) => Ordering::Equal,
            (Infinity, _) => Ordering::Less,
            (_, Infinity) => Ordering::Greater,
            _ => {
                let xa = self.xminpoly().unwrap();
                let xb = other.xminpoly().unwrap();
                xa.cmp_canonical(xb).then_with(|| match (self, other) {
                    (Closed { ybranch: a, .. }, Closed { ybranch: b, .. }) => a.cmp_canonical(b),
                    (Closed { .. }, Inert { .. }) => Ordering::Less,
                    (Inert { .. }, Closed { .. }) => Ordering::Greater,
                    _ => Ordering::Equal,
                })
            }
        }
    }
}

impl PartialOrd for CurvePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "inf"),
            CurvePoint::Closed { xminpoly, ybranch } if xminpoly.deg() == 1 => {
                write!(f, "({}, {})", -xminpoly.coeff(0), ybranch.coeff(0))
            }
            CurvePoint::Closed { xminpoly, ybranch } => {
                write!(f, "[{xminpoly}; y={ybranch}]")
            }
            CurvePoint::Inert { xminpoly } => write!(f, "[{xminpoly}; inert]"),
        }
    }
}

impl fmt::Debug for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
