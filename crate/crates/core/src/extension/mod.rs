//! Extensions `0 -> O -> E -> N -> 0` of line bundles on the curve and the
//! semi-stability tests built on their classes.
//!
//! A class `e` in `H^1(N^-1)` is a linear functional on `L(N + K)`. With
//! `2M ~ N + K` fixed by a function `psi` (`div psi = 2M - N - K`), the
//! cup product pairs `L(M)` with itself through `s, t -> s t psi`, and the
//! quadric of `e` is `(e(s_i s_j psi))`.

mod destab;
mod search;

use std::sync::Arc;

use crate::curve::{Divisor, HyperellipticCurve};
use crate::error::{Error, Result};
use crate::field::{FieldElement, Matrix};
use crate::rr::{is_principal, rr_basis, LinearFunctional, RRBasis, RationalFunction};

pub use destab::{
    brute_force_destabilizer, candidate_divisors, destabilizer_degree_bound, DestabilizerOracle,
    Domain,
};
pub use search::{search_semistable, SearchResult};

/// Validated data `(N, M)` of an extension, with the bases it needs.
#[derive(Debug)]
pub struct ExtensionDatum {
    curve: HyperellipticCurve,
    n_div: Divisor,
    m_div: Divisor,
    l_div: Divisor,
    psi: RationalFunction,
    basis_m: Arc<RRBasis>,
    basis_nk: Arc<RRBasis>,
    /// `cup[i][j]` = coordinates of `s_i s_j psi` in `L(N + K)`.
    cup: Vec<Vec<Vec<FieldElement>>>,
}

impl ExtensionDatum {
    /// Checks `n >= 0` even, `N` nontrivial when `n = 0`, and `2M ~ N + K`.
    pub fn new(curve: &HyperellipticCurve, n_div: Divisor, m_div: Divisor) -> Result<Self> {
        let n = n_div.degree();
        if n < 0 || n % 2 != 0 {
            return Err(Error::InvalidDatum(format!(
                "deg N = {n} must be even and nonnegative"
            )));
        }
        if n == 0 && is_principal(curve, &n_div)?.is_some() {
            return Err(Error::InvalidDatum("N is trivial".into()));
        }
        let k = curve.canonical_divisor();
        let gap = n_div.add(&k).sub(&m_div.scale(2));
        if gap.degree() != 0 {
            return Err(Error::InvalidDatum(format!(
                "deg 2M = {} differs from deg (N + K) = {}",
                2 * m_div.degree(),
                n + k.degree()
            )));
        }
        let psi = is_principal(curve, &gap)?
            .ok_or_else(|| Error::InvalidDatum("2M is not linearly equivalent to N + K".into()))?;
        let basis_m = Arc::new(rr_basis(curve, &m_div)?);
        let basis_nk = Arc::new(rr_basis(curve, &n_div.add(&k))?);
        let s = basis_m.elements();
        let mut cup = vec![vec![Vec::new(); s.len()]; s.len()];
        for i in 0..s.len() {
            let si_psi = s[i].mul(&psi, curve);
            for j in i..s.len() {
                let v = basis_nk.coordinates(&si_psi.mul(&s[j], curve))?;
                cup[j][i] = v.clone();
                cup[i][j] = v;
            }
        }
        Ok(ExtensionDatum {
            curve: curve.clone(),
            l_div: k.sub(&m_div),
            n_div,
            m_div,
            psi,
            basis_m,
            basis_nk,
            cup,
        })
    }

    pub fn curve(&self) -> &HyperellipticCurve {
        &self.curve
    }

    pub fn n_divisor(&self) -> &Divisor {
        &self.n_div
    }

    pub fn m_divisor(&self) -> &Divisor {
        &self.m_div
    }

    /// `L = K - M`.
    pub fn l_divisor(&self) -> &Divisor {
        &self.l_div
    }

    pub fn psi(&self) -> &RationalFunction {
        &self.psi
    }

    pub fn n(&self) -> i64 {
        self.n_div.degree()
    }

    pub fn genus(&self) -> usize {
        self.curve.genus()
    }

    /// `m = h0(M)`.
    pub fn m(&self) -> usize {
        self.basis_m.dim()
    }

    /// `h0(N + K)`, the dimension of the space of classes.
    pub fn class_dim(&self) -> usize {
        self.basis_nk.dim()
    }

    pub fn basis_m(&self) -> &Arc<RRBasis> {
        &self.basis_m
    }

    pub fn basis_nk(&self) -> &Arc<RRBasis> {
        &self.basis_nk
    }
}

/// `N = 2B`, `M = B + (g-1) inf`; then `2M = N + K` as divisors.
pub fn half_class_helper(curve: &HyperellipticCurve, b: &Divisor) -> (Divisor, Divisor) {
    let n = b.scale(2);
    let m = b.add(&Divisor::single(
        crate::curve::CurvePoint::Infinity,
        curve.genus() as i64 - 1,
    ));
    (n, m)
}

/// An extension class, as a functional on `L(N + K)`.
#[derive(Clone, Debug)]
pub struct ExtensionClass {
    datum: Arc<ExtensionDatum>,
    functional: LinearFunctional,
}

impl ExtensionClass {
    pub fn new(datum: &Arc<ExtensionDatum>, coords: Vec<FieldElement>) -> Result<Self> {
        let functional = LinearFunctional::new(datum.basis_nk.clone(), coords)?;
        Ok(ExtensionClass {
            datum: datum.clone(),
            functional,
        })
    }

    pub fn zero(datum: &Arc<ExtensionDatum>) -> Self {
        let field = datum.curve.field();
        Self::new(datum, vec![field.zero(); datum.class_dim()]).unwrap()
    }

    pub fn datum(&self) -> &Arc<ExtensionDatum> {
        &self.datum
    }

    pub fn coords(&self) -> &[FieldElement] {
        self.functional.coords()
    }

    pub fn functional(&self) -> &LinearFunctional {
        &self.functional
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &ExtensionClass) -> Result<Self> {
        self.check_same(o)?;
        let v = self
            .coords()
            .iter()
            .zip(o.coords())
            .map(|(a, b)| a + b)
            .collect();
        Self::new(&self.datum, v)
    }

    pub fn scale(&self, k: &FieldElement) -> Self {
        let v = self.coords().iter().map(|a| a * k).collect();
        Self::new(&self.datum, v).unwrap()
    }

    fn check_same(&self, o: &ExtensionClass) -> Result<()> {
        if Arc::ptr_eq(&self.datum, &o.datum) {
            Ok(())
        } else {
            Err(Error::Incompatible(
                "classes of different extension data".into(),
            ))
        }
    }

    /// `e(v)` for coordinates `v` in `L(N + K)`.
    pub fn apply(&self, v: &[FieldElement]) -> FieldElement {
        self.functional.apply(v)
    }
}

/// The matrix of `d_e : H^0(M') -> H^1(L')` in the bases of `L(M')` (rows)
/// and `L(K - L')` (columns).
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub matrix: Matrix,
    pub row_divisor: Divisor,
    pub col_divisor: Divisor,
}

/// The quadric `(e(s_i s_j psi))` on `L(M)`.
pub fn quadric_matrix(e: &ExtensionClass) -> Matrix {
    let d = &e.datum;
    let field = d.curve.field();
    let m = d.m();
    let rows = (0..m)
        .map(|i| (0..m).map(|j| e.apply(&d.cup[i][j])).collect())
        .collect();
    Matrix::from_rows(field, m, rows).unwrap()
}

/// `det(quadric) != 0`; true certifies semi-stability of `E` over the
/// algebraic closure.
pub fn det_test(e: &ExtensionClass) -> bool {
    !quadric_matrix(e).det().unwrap().is_zero()
}

/// The boundary map as a linear function of the class: entry `(i, j)` is
/// `e` applied to the coordinates of `s_i psi' t_j` in `L(N + K)`.
#[derive(Clone, Debug)]
pub struct BoundaryMap {
    datum: Arc<ExtensionDatum>,
    row_divisor: Divisor,
    col_divisor: Divisor,
    cols: usize,
    entries: Vec<Vec<Vec<FieldElement>>>,
}

impl BoundaryMap {
    /// Needs `M' - L' ~ N`.
    pub fn new(datum: &Arc<ExtensionDatum>, l_prime: &Divisor, m_prime: &Divisor) -> Result<Self> {
        let curve = &datum.curve;
        let psi = twist_function(datum, l_prime, m_prime)?;
        let rows_b = rr_basis(curve, m_prime)?;
        let col_div = curve.canonical_divisor().sub(l_prime);
        let cols_b = rr_basis(curve, &col_div)?;
        let mut entries = Vec::with_capacity(rows_b.dim());
        for s in rows_b.elements() {
            let s_psi = s.mul(&psi, curve);
            let row = cols_b
                .elements()
                .iter()
                .map(|t| datum.basis_nk.coordinates(&s_psi.mul(t, curve)))
                .collect::<Result<Vec<_>>>()?;
            entries.push(row);
        }
        Ok(BoundaryMap {
            datum: datum.clone(),
            row_divisor: m_prime.clone(),
            col_divisor: col_div,
            cols: cols_b.dim(),
            entries,
        })
    }

    pub fn matrix(&self, e: &ExtensionClass) -> Result<BoundaryMatrix> {
        if !Arc::ptr_eq(&e.datum, &self.datum) {
            return Err(Error::Incompatible(
                "class of a different extension datum".into(),
            ));
        }
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(|v| e.apply(v)).collect())
            .collect();
        Ok(BoundaryMatrix {
            matrix: Matrix::from_rows(self.datum.curve.field(), self.cols, rows)?,
            row_divisor: self.row_divisor.clone(),
            col_divisor: self.col_divisor.clone(),
        })
    }

    /// Rank certificate from the precomputed map; see [`prop1_certificate`].
    pub fn certificate(&self, e: &ExtensionClass) -> Result<Prop1Outcome> {
        let m_deg = self.row_divisor.degree();
        let canon = 2 * self.datum.genus() as i64 - 2;
        // deg K - deg L' = deg col_divisor
        let l_deg = canon - self.col_divisor.degree();
        if l_deg > m_deg {
            return Err(Error::Precondition(format!(
                "deg L' = {l_deg} exceeds deg M' = {m_deg}"
            )));
        }
        let b = self.matrix(e)?;
        let rank = b.matrix.rank();
        let total = l_deg + m_deg;
        let injective = total >= canon && rank == b.matrix.rows();
        let surjective = total <= canon && rank == b.matrix.cols();
        Ok(match (injective, surjective) {
            (true, true) => Prop1Outcome::CertifiedSemistable(Prop1Case::Both),
            (true, false) => Prop1Outcome::CertifiedSemistable(Prop1Case::Injective),
            (false, true) => Prop1Outcome::CertifiedSemistable(Prop1Case::Surjective),
            (false, false) => Prop1Outcome::Inconclusive,
        })
    }
}

/// The boundary map of `E` viewed as an extension of `M'` by `L'`; needs
/// `M' - L' ~ N`.
pub fn boundary_matrix(
    e: &ExtensionClass,
    l_prime: &Divisor,
    m_prime: &Divisor,
) -> Result<BoundaryMatrix> {
    BoundaryMap::new(&e.datum, l_prime, m_prime)?.matrix(e)
}

/// `psi'` with `div psi' = M' - L' - N`.
pub(crate) fn twist_function(
    d: &ExtensionDatum,
    l_prime: &Divisor,
    m_prime: &Divisor,
) -> Result<RationalFunction> {
    let gap = d.n_div.add(l_prime).sub(m_prime);
    if gap.degree() != 0 {
        return Err(Error::Incompatible(format!(
            "deg M' - deg L' = {} but deg N = {}",
            m_prime.degree() - l_prime.degree(),
            d.n()
        )));
    }
    is_principal(&d.curve, &gap)?
        .ok_or_else(|| Error::Incompatible("M' - L' is not linearly equivalent to N".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prop1Case {
    /// `deg L' + deg M' >= 2g - 2` and the boundary map is injective.
    Injective,
    /// `deg L' + deg M' <= 2g - 2` and the boundary map is surjective.
    Surjective,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prop1Outcome {
    CertifiedSemistable(Prop1Case),
    /// The sufficient condition fails; this says nothing about stability.
    Inconclusive,
}

/// Rank certificate for semi-stability of `E` written as an extension of
/// `M'` by `L'`, with `deg L' <= deg M'`.
pub fn prop1_certificate(
    e: &ExtensionClass,
    l_prime: &Divisor,
    m_prime: &Divisor,
) -> Result<Prop1Outcome> {
    if l_prime.degree() > m_prime.degree() {
        return Err(Error::Precondition(format!(
            "deg L' = {} exceeds deg M' = {}",
            l_prime.degree(),
            m_prime.degree()
        )));
    }
    BoundaryMap::new(&e.datum, l_prime, m_prime)?.certificate(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurvePoint;
    use crate::fixtures;

    fn datum(curve: &HyperellipticCurve, n: i64) -> Arc<ExtensionDatum> {
        let b = fixtures::standard_half(curve, n).unwrap();
        let (nd, md) = half_class_helper(curve, &b);
        Arc::new(ExtensionDatum::new(curve, nd, md).unwrap())
    }

    #[test]
    fn datum_validation() {
        let c = fixtures::genus2_f5();
        let inf = |k| Divisor::single(CurvePoint::Infinity, k);
        assert!(ExtensionDatum::new(&c, inf(2), inf(2)).is_ok());
        assert!(matches!(
            ExtensionDatum::new(&c, inf(3), inf(2)),
            Err(Error::InvalidDatum(_))
        ));
        assert!(matches!(
            ExtensionDatum::new(&c, Divisor::zero(), inf(1)),
            Err(Error::InvalidDatum(_))
        ));
        let d = datum(&c, 6);
        assert_eq!(d.class_dim(), 6 + 2 - 1);
        assert_eq!(d.l_divisor().degree() + d.m_divisor().degree(), 2);
    }

    #[test]
    fn helper_degrees() {
        let c = fixtures::genus2_f5();
        let p = fixtures::first_split_point(&c).unwrap().unwrap();
        let b = Divisor::from_terms([(p, 1), (CurvePoint::Infinity, 2)]);
        let (n, m) = half_class_helper(&c, &b);
        assert_eq!((n.degree(), m.degree()), (6, 4));
    }

    #[test]
    fn quadric_is_symmetric_and_zero_class_fails() {
        let c = fixtures::elliptic_f5();
        let d = datum(&c, 4);
        let e = ExtensionClass::new(
            &d,
            (0..d.class_dim())
                .map(|i| c.field().from_i64(i as i64 + 1))
                .collect(),
        )
        .unwrap();
        assert!(quadric_matrix(&e).is_symmetric());
        assert!(!det_test(&ExtensionClass::zero(&d)));
        let l = d.l_divisor().clone();
        let m = d.m_divisor().clone();
        let b = boundary_matrix(&e, &l, &m).unwrap();
        assert_eq!(b.matrix, quadric_matrix(&e));
    }

    #[test]
    fn prop1_on_zero_class_is_inconclusive() {
        let c = fixtures::elliptic_f5();
        let d = datum(&c, 2);
        let z = ExtensionClass::zero(&d);
        let out = prop1_certificate(&z, d.l_divisor(), d.m_divisor()).unwrap();
        assert_eq!(out, Prop1Outcome::Inconclusive);
        assert!(matches!(
            prop1_certificate(&z, d.m_divisor(), d.l_divisor()),
            Err(Error::Precondition(_))
        ));
    }
}
