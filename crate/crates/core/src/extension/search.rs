use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldElement, Matrix};

use super::{det_test, ExtensionClass};

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub class: ExtensionClass,
    pub coefficients: Vec<i64>,
    /// The box `|n_i| <= bound` searched, `bound = m`.
    pub bound: usize,
    /// Integer vectors tested before and including the hit.
    pub examined: u64,
}

/// Position `t` in the ordering `0, 1, -1, 2, -2, ...` of the integers.
fn zigzag(t: i64) -> i64 {
    if t % 2 == 1 {
        (t + 1) / 2
    } else {
        -t / 2
    }
}

/// Integer vectors of max-norm exactly `r` in `k` coordinates, in
/// lexicographic order for the coordinate ordering `0, 1, -1, 2, -2, ...`.
pub(crate) fn shell(k: usize, r: i64) -> Vec<Vec<i64>> {
    let side = 2 * r + 1;
    let total = (side as u64).pow(k as u32);
    (0..total)
        .map(|mut idx| {
            let mut v = vec![0i64; k];
            for slot in v.iter_mut().rev() {
                *slot = zigzag((idx % side as u64) as i64);
                idx /= side as u64;
            }
            v
        })
        .filter(|v| v.iter().any(|x| x.abs() == r))
        .collect()
}

/// The first `e = sum n_i e_i` with `det_test(e)`, scanning shells of
/// increasing max-norm up to `m = h0(M)`, lexicographically within a shell
/// with coordinates ordered `0, 1, -1, 2, -2, ...`.
pub fn search_semistable(v: &[ExtensionClass]) -> Result<SearchResult> {
    let first = v
        .first()
        .ok_or_else(|| Error::Precondition("empty list of classes".into()))?;
    let datum = first.datum().clone();
    for e in v {
        if !std::sync::Arc::ptr_eq(e.datum(), &datum) {
            return Err(Error::Incompatible(
                "classes of different extension data".into(),
            ));
        }
    }
    let field = datum.curve().field().clone();
    let rows: Vec<Vec<FieldElement>> = v.iter().map(|e| e.coords().to_vec()).collect();
    if Matrix::from_rows(&field, datum.class_dim(), rows)?.rank() != v.len() {
        return Err(Error::Precondition(
            "the classes are linearly dependent".into(),
        ));
    }
    let m = datum.m();
    let mut examined = 0u64;
    for r in 1..=m as i64 {
        let candidates = shell(v.len(), r);
        let combine = |coef: &Vec<i64>| {
            let mut coords = vec![field.zero(); datum.class_dim()];
            for (n, e) in coef.iter().zip(v) {
                let k = field.from_i64(*n);
                for (c, x) in coords.iter_mut().zip(e.coords()) {
                    *c = &*c + &(x * &k);
                }
            }
            ExtensionClass::new(&datum, coords).unwrap()
        };
        let hit = candidates.par_iter().position_first(|coef| {
            let e = combine(coef);
            !e.is_zero() && det_test(&e)
        });
        match hit {
            Some(pos) => {
                let coefficients = candidates[pos].clone();
                return Ok(SearchResult {
                    class: combine(&coefficients),
                    coefficients,
                    bound: m,
                    examined: examined + pos as u64 + 1,
                });
            }
            None => examined += candidates.len() as u64,
        }
    }
    Err(Error::SearchExhausted { bound: m, examined })
}
