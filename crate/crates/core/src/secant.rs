//! Membership of extension classes in secant varieties of the curve
//! embedded by `|N + K|`.
//!
//! `e` lies on the span of an effective `D` exactly when it annihilates
//! `L(N + K - D)`; with `n = 2d + 2`, membership in the `d`-th secant
//! variety is the same as instability of `E`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::curve::Divisor;
use crate::error::{Error, Result};
use crate::extension::{candidate_divisors, det_test, Domain, ExtensionClass, ExtensionDatum};
use crate::field::{FieldElement, Matrix};
use crate::rr::rr_basis;

#[derive(Clone, Debug)]
pub struct SecantQuery {
    pub class: ExtensionClass,
    /// Secant index: candidates `D` have `deg D <= d`.
    pub d: usize,
    pub domain: Domain,
}

impl SecantQuery {
    /// The query with `n = 2d + 2` read off the datum.
    pub fn from_class(class: ExtensionClass, domain: Domain) -> Result<Self> {
        let n = class.datum().n();
        if n < 2 {
            return Err(Error::Precondition(format!("n = {n} has no secant index")));
        }
        Ok(SecantQuery {
            d: ((n - 2) / 2) as usize,
            class,
            domain,
        })
    }
}

/// The inclusions `L(N + K - D) -> L(N + K)` for every candidate `D`.
pub struct SecantOracle {
    datum: Arc<ExtensionDatum>,
    candidates: Vec<(Divisor, Matrix)>,
}

impl SecantOracle {
    pub fn new(datum: &Arc<ExtensionDatum>, d: usize, domain: &Domain) -> Result<Self> {
        let curve = datum.curve();
        let nk = datum.basis_nk().divisor().clone();
        let mut candidates = Vec::new();
        for div in candidate_divisors(datum, domain, d)? {
            let sub = rr_basis(curve, &nk.sub(&div))?;
            candidates.push((div, datum.basis_nk().inclusion_matrix(&sub)?));
        }
        Ok(SecantOracle {
            datum: datum.clone(),
            candidates,
        })
    }

    pub fn candidate_count(&self) -> usize {
        self.candidates.len()
    }

    pub fn find(&self, e: &ExtensionClass) -> Result<Option<Divisor>> {
        if !Arc::ptr_eq(e.datum(), &self.datum) {
            return Err(Error::Incompatible(
                "class of a different extension datum".into(),
            ));
        }
        for (d, m) in &self.candidates {
            if annihilates(m, e.coords())? {
                return Ok(Some(d.clone()));
            }
        }
        Ok(None)
    }
}

fn annihilates(m: &Matrix, e: &[FieldElement]) -> Result<bool> {
    Ok(m.mul_vec(e)?.iter().all(|v| v.is_zero()))
}

/// Recomputes `L(N + K - D)` from scratch and checks annihilation.
pub fn verify_witness(e: &ExtensionClass, d: &Divisor) -> Result<bool> {
    let datum = e.datum();
    let sub = rr_basis(datum.curve(), &datum.basis_nk().divisor().sub(d))?;
    for phi in sub.elements() {
        if !e.functional().eval(phi)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The smallest `D` with `deg D <= d` whose span contains `e`, re-verified.
pub fn secant_member(q: &SecantQuery) -> Result<Option<Divisor>> {
    let hit = SecantOracle::new(q.class.datum(), q.d, &q.domain)?.find(&q.class)?;
    if let Some(d) = &hit {
        if !verify_witness(&q.class, d)? {
            return Err(Error::Precondition(format!(
                "secant witness {d} failed re-verification"
            )));
        }
    }
    Ok(hit)
}

/// `s` independent classes: uniform entries over a finite field, integers
/// in `[-height, height]` over `Q`; rank-deficient draws are rejected.
pub fn sample_subspace<R: Rng>(
    datum: &Arc<ExtensionDatum>,
    s: usize,
    height: i64,
    rng: &mut R,
) -> Result<Vec<ExtensionClass>> {
    let field = datum.curve().field().clone();
    let dim = datum.class_dim();
    if s > dim {
        return Err(Error::Precondition(format!(
            "subspace dimension {s} exceeds {dim}"
        )));
    }
    loop {
        let rows: Vec<Vec<FieldElement>> = (0..s)
            .map(|_| {
                (0..dim)
                    .map(|_| match field.small_order() {
                        Some(q) => field.element_from_index(rng.gen_range(0..q)),
                        None => field.from_i64(rng.gen_range(-height..=height)),
                    })
                    .collect()
            })
            .collect();
        if Matrix::from_rows(&field, dim, rows.clone())?.rank() == s {
            return rows
                .into_iter()
                .map(|r| ExtensionClass::new(datum, r))
                .collect();
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialReport {
    pub trial: u64,
    pub found_offsecant: bool,
    /// Coefficients (field element indices) of the first off-secant class.
    pub offsecant_coefficients: Option<Vec<u64>>,
    pub examined: u64,
    pub det_true: u64,
    pub soundness_violations: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub n: i64,
    pub genus: usize,
    pub m: usize,
    pub secant_index: usize,
    pub subspace_dim: usize,
    pub class_dim: usize,
    pub hypothesis_satisfied: bool,
    pub trials: Vec<TrialReport>,
    pub successes: u64,
    pub soundness_violations: u64,
}

/// For each trial, samples an `s`-dimensional subspace of classes and walks
/// its nonzero elements in lexicographic coefficient order until one lies
/// off the secant variety; every examined class is cross-checked against
/// the determinant test.
///
/// Trial `t` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `t`,
/// so results do not depend on scheduling.
pub fn offsecant_experiment(
    datum: &Arc<ExtensionDatum>,
    s: usize,
    trials: u64,
    seed: u64,
) -> Result<ExperimentReport> {
    let field = datum.curve().field().clone();
    let q = field.small_order().ok_or(Error::InfiniteField)?;
    let n = datum.n();
    let query_d = ((n - 2).max(0) / 2) as usize;
    let oracle = SecantOracle::new(datum, query_d, &Domain::Exhaustive)?;
    let total = q
        .checked_pow(s as u32)
        .ok_or_else(|| Error::Unsupported(format!("walking {q}^{s} classes")))?;
    let reports = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<TrialReport> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            let basis = sample_subspace(datum, s, 0, &mut rng)?;
            let mut rep = TrialReport {
                trial: t,
                found_offsecant: false,
                offsecant_coefficients: None,
                examined: 0,
                det_true: 0,
                soundness_violations: 0,
            };
            for idx in 1..total {
                let mut digits = vec![0u64; s];
                let mut rest = idx;
                for slot in digits.iter_mut().rev() {
                    *slot = rest % q;
                    rest /= q;
                }
                let mut coords = vec![field.zero(); datum.class_dim()];
                for (dg, b) in digits.iter().zip(&basis) {
                    let k = field.element_from_index(*dg);
                    for (c, x) in coords.iter_mut().zip(b.coords()) {
                        *c = &*c + &(x * &k);
                    }
                }
                let e = ExtensionClass::new(datum, coords)?;
                rep.examined += 1;
                let det = det_test(&e);
                let member = oracle.find(&e)?.is_some();
                if det {
                    rep.det_true += 1;
                    if member {
                        rep.soundness_violations += 1;
                    }
                }
                if !member {
                    rep.found_offsecant = true;
                    rep.offsecant_coefficients = Some(digits);
                    break;
                }
            }
            Ok(rep)
        })
        .collect::<Result<Vec<_>>>()?;
    let m = datum.m();
    Ok(ExperimentReport {
        n,
        genus: datum.genus(),
        m,
        secant_index: query_d,
        subspace_dim: s,
        class_dim: datum.class_dim(),
        hypothesis_satisfied: s as i64 >= n - m as i64 + datum.genus() as i64,
        successes: reports.iter().filter(|r| r.found_offsecant).count() as u64,
        soundness_violations: reports.iter().map(|r| r.soundness_violations).sum(),
        trials: reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::half_class_helper;
    use crate::fixtures;

    fn datum(c: &crate::curve::HyperellipticCurve, n: i64) -> Arc<ExtensionDatum> {
        let b = fixtures::standard_half(c, n).unwrap();
        let (nd, md) = half_class_helper(c, &b);
        Arc::new(ExtensionDatum::new(c, nd, md).unwrap())
    }

    #[test]
    fn zero_class_is_on_every_secant() {
        let c = fixtures::elliptic_f5();
        let d = datum(&c, 4);
        let q = SecantQuery::from_class(ExtensionClass::zero(&d), Domain::Exhaustive).unwrap();
        assert_eq!(secant_member(&q).unwrap(), Some(Divisor::zero()));
    }

    #[test]
    fn point_evaluation_lies_on_its_point() {
        let c = fixtures::elliptic_f5();
        let d = datum(&c, 4);
        let p = fixtures::first_split_point(&c).unwrap().unwrap();
        let pd = Divisor::single(p.clone(), 1);
        // a nonzero functional vanishing on L(N + K - P)
        let sub = rr_basis(&c, &d.basis_nk().divisor().sub(&pd)).unwrap();
        let inc = d.basis_nk().inclusion_matrix(&sub).unwrap();
        let e = ExtensionClass::new(&d, inc.kernel_basis().remove(0)).unwrap();
        let q = SecantQuery::from_class(e, Domain::Exhaustive).unwrap();
        let w = secant_member(&q).unwrap().unwrap();
        assert!(w == pd || w.degree() == 0 || w < pd);
    }

    #[test]
    fn full_space_experiment_always_succeeds() {
        let c = fixtures::elliptic_f3();
        let d = datum(&c, 4);
        let rep = offsecant_experiment(&d, d.class_dim(), 4, 7).unwrap();
        assert_eq!(rep.successes, 4);
        assert_eq!(rep.soundness_violations, 0);
        assert!(rep.hypothesis_satisfied);
    }
}
