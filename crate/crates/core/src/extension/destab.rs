//! Exhaustive search for destabilizing line subbundles.
//!
//! A line subbundle of `E` (as an extension of `M'` by `L'`) other than `L'`
//! is `M'(-D)` for an effective `D`, and it lifts exactly when `e`
//! annihilates the image of `L(K + M' - L' - D)` in `L(N + K)`. It
//! destabilizes when `deg D < (deg M' - deg L') / 2`.
//!
//! The maximal destabilizing subbundle is unique, hence defined over the
//! base field, so enumerating rational divisors `D` is complete over a
//! finite field.

use std::sync::Arc;

use crate::curve::{effective_divisors, CurvePoint, Divisor};
use crate::error::{Error, Result};
use crate::field::Matrix;
use crate::rr::rr_basis;

use super::{twist_function, ExtensionClass, ExtensionDatum};

/// Where to look for `D`.
#[derive(Clone, Debug)]
pub enum Domain {
    /// Every effective divisor over a finite field.
    Exhaustive,
    /// Effective divisors supported on the given points.
    Points(Vec<CurvePoint>),
}

/// Largest `deg D` with `deg D < (deg M' - deg L') / 2`, if any.
pub fn destabilizer_degree_bound(l_deg: i64, m_deg: i64) -> Option<usize> {
    let gap = m_deg - l_deg;
    (gap >= 1).then(|| ((gap - 1).div_euclid(2)) as usize)
}

/// Effective divisors of degree at most `max_degree` in the domain.
pub fn candidate_divisors(
    datum: &ExtensionDatum,
    domain: &Domain,
    max_degree: usize,
) -> Result<Vec<Divisor>> {
    match domain {
        Domain::Exhaustive => {
            if !datum.curve().field().is_finite() {
                return Err(Error::InfiniteField);
            }
            effective_divisors(datum.curve(), max_degree)
        }
        Domain::Points(pts) => {
            let mut pts = pts.clone();
            pts.sort();
            pts.dedup();
            let mut out = vec![Divisor::zero()];
            for p in pts {
                let deg = p.degree() as usize;
                let mut next = Vec::new();
                for d in &out {
                    let mut k = 0;
                    while d.degree() as usize + k * deg <= max_degree {
                        next.push(d.add(&Divisor::single(p.clone(), k as i64)));
                        k += 1;
                    }
                }
                out = next;
            }
            out.sort();
            Ok(out)
        }
    }
}

/// The annihilator conditions of every candidate `D`, prepared once and
/// reused across classes.
pub struct DestabilizerOracle {
    datum: Arc<ExtensionDatum>,
    candidates: Vec<(Divisor, Matrix)>,
}

impl DestabilizerOracle {
    pub fn new(
        datum: &Arc<ExtensionDatum>,
        l_prime: &Divisor,
        m_prime: &Divisor,
        domain: &Domain,
    ) -> Result<Self> {
        Self::bounded(datum, l_prime, m_prime, domain, None)
    }

    /// As [`DestabilizerOracle::new`], additionally capping `deg D` at `cap`.
    pub fn bounded(
        datum: &Arc<ExtensionDatum>,
        l_prime: &Divisor,
        m_prime: &Divisor,
        domain: &Domain,
        cap: Option<usize>,
    ) -> Result<Self> {
        let curve = datum.curve();
        let psi = twist_function(datum, l_prime, m_prime)?;
        let bound = destabilizer_degree_bound(l_prime.degree(), m_prime.degree());
        let Some(max_deg) = bound.map(|b| cap.map_or(b, |c| c.min(b))) else {
            return Ok(DestabilizerOracle {
                datum: datum.clone(),
                candidates: Vec::new(),
            });
        };
        let base = curve.canonical_divisor().add(m_prime).sub(l_prime);
        let mut candidates = Vec::new();
        for d in candidate_divisors(datum, domain, max_deg)? {
            let sub = rr_basis(curve, &base.sub(&d))?;
            let rows = sub
                .elements()
                .iter()
                .map(|phi| datum.basis_nk().coordinates(&phi.mul(&psi, curve)))
                .collect::<Result<Vec<_>>>()?;
            candidates.push((
                d,
                Matrix::from_rows(curve.field(), datum.class_dim(), rows)?,
            ));
        }
        Ok(DestabilizerOracle {
            datum: datum.clone(),
            candidates,
        })
    }

    pub fn candidate_count(&self) -> usize {
        self.candidates.len()
    }

    /// The first candidate `D` whose subspace `e` annihilates.
    pub fn find(&self, e: &ExtensionClass) -> Result<Option<Divisor>> {
        if !Arc::ptr_eq(e.datum(), &self.datum) {
            return Err(Error::Incompatible(
                "class of a different extension datum".into(),
            ));
        }
        for (d, m) in &self.candidates {
            if m.mul_vec(e.coords())?.iter().all(|v| v.is_zero()) {
                return Ok(Some(d.clone()));
            }
        }
        Ok(None)
    }
}

/// A destabilizing `D` (smallest in enumeration order), or `None`. With
/// [`Domain::Exhaustive`] over a finite field, `None` means `E` is
/// semi-stable.
pub fn brute_force_destabilizer(
    e: &ExtensionClass,
    l_prime: &Divisor,
    m_prime: &Divisor,
    domain: &Domain,
) -> Result<Option<Divisor>> {
    DestabilizerOracle::new(e.datum(), l_prime, m_prime, domain)?.find(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::half_class_helper;
    use crate::fixtures;

    #[test]
    fn degree_bound() {
        assert_eq!(destabilizer_degree_bound(0, 0), None);
        assert_eq!(destabilizer_degree_bound(-1, 1), Some(0));
        assert_eq!(destabilizer_degree_bound(0, 4), Some(1));
        assert_eq!(destabilizer_degree_bound(0, 5), Some(2));
    }

    #[test]
    fn split_extension_is_destabilized_by_n_itself() {
        let c = fixtures::elliptic_f5();
        let b = fixtures::standard_half(&c, 4).unwrap();
        let (n, m) = half_class_helper(&c, &b);
        let d = Arc::new(ExtensionDatum::new(&c, n.clone(), m).unwrap());
        let z = ExtensionClass::zero(&d);
        let w = brute_force_destabilizer(&z, &Divisor::zero(), &n, &Domain::Exhaustive).unwrap();
        assert_eq!(w, Some(Divisor::zero()));
    }

    #[test]
    fn explicit_points_domain() {
        let c = fixtures::elliptic_q();
        let b = fixtures::standard_half(&c, 4).unwrap();
        let (n, m) = half_class_helper(&c, &b);
        let d = Arc::new(ExtensionDatum::new(&c, n.clone(), m).unwrap());
        let z = ExtensionClass::zero(&d);
        let dom = Domain::Points(vec![CurvePoint::Infinity]);
        let w = brute_force_destabilizer(&z, &Divisor::zero(), &n, &dom).unwrap();
        assert_eq!(w, Some(Divisor::zero()));
        assert_eq!(
            brute_force_destabilizer(&z, &Divisor::zero(), &n, &Domain::Exhaustive).unwrap_err(),
            Error::InfiniteField
        );
    }
}
