use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::CurvePoint;

/// A formal integer combination of closed points, kept in canonical point
/// order with zero multiplicities removed.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    terms: BTreeMap<CurvePoint, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(p: CurvePoint, mult: i64) -> Self {
        let mut d = Self::zero();
        d.add_point(p, mult);
        d
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (CurvePoint, i64)>) -> Self {
        let mut d = Self::zero();
        for (p, m) in terms {
            d.add_point(p, m);
        }
        d
    }

    pub fn add_point(&mut self, p: CurvePoint, mult: i64) {
        let entry = self.terms.entry(p.clone()).or_insert(0);
        *entry += mult;
        if *entry == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, m)| p.degree() * m).sum()
    }

    pub fn mult(&self, p: &CurvePoint) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn infinity_mult(&self) -> i64 {
        self.mult(&CurvePoint::Infinity)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CurvePoint, i64)> {
        self.terms.iter().map(|(p, &m)| (p, m))
    }

    pub fn support(&self) -> impl Iterator<Item = &CurvePoint> {
        self.terms.keys()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&m| m > 0)
    }

    pub fn positive_part(&self) -> Divisor {
        Divisor::from_terms(
            self.terms()
                .filter(|(_, m)| *m > 0)
                .map(|(p, m)| (p.clone(), m)),
        )
    }

    pub fn negative_part(&self) -> Divisor {
        Divisor::from_terms(
            self.terms()
                .filter(|(_, m)| *m < 0)
                .map(|(p, m)| (p.clone(), -m)),
        )
    }

    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, m) in o.terms() {
            d.add_point(p.clone(), m);
        }
        d
    }

    pub fn sub(&self, o: &Divisor) -> Divisor {
        self.add(&o.scale(-1))
    }

    pub fn neg(&self) -> Divisor {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Divisor {
        Divisor::from_terms(self.terms().map(|(p, m)| (p.clone(), m * k)))
    }

    /// `self >= o` coefficientwise.
    pub fn dominates(&self, o: &Divisor) -> bool {
        self.sub(o).is_effective()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms()
                .map(|(p, m)| serde_json::json!({ "point": p.to_json(), "mult": m }))
                .collect(),
        )
    }
}

/// Order used by enumerations: by degree, then lexicographic on the
/// `(point, multiplicity)` list.
impl Ord for Divisor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.terms().cmp(other.terms()))
    }
}

impl PartialOrd for Divisor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(p, m)| {
                if m == 1 {
                    format!("{p}")
                } else {
                    format!("{m}*{p}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Divisor({self})")
    }
}
