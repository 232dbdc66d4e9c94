use std::collections::BTreeMap;
use std::sync::Arc;

use crate::curve::{CurvePoint, Divisor, HyperellipticCurve, PadicBranch};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Matrix, Poly};

use super::RationalFunction;

/// A monomial of the ansatz numerator `a(x) + b(x) y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Term {
    X(usize),
    XY(usize),
}

impl Term {
    fn weight(self, genus: usize) -> usize {
        match self {
            Term::X(i) => 2 * i,
            Term::XY(j) => 2 * j + 2 * genus + 1,
        }
    }
}

/// A basis of `L(D) = {phi : div(phi) + D >= 0}`.
///
/// Elements are `(a + b y) / c_D` over a fixed denominator `c_D`. Their pole
/// orders at infinity are strictly increasing and each has leading
/// coefficient 1 in the monomial of highest pole order.
#[derive(Clone, Debug)]
pub struct RRBasis {
    curve: HyperellipticCurve,
    divisor: Divisor,
    denominator: Poly,
    columns: Vec<Term>,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
    basis: Vec<RationalFunction>,
}

impl RRBasis {
    pub fn curve(&self) -> &HyperellipticCurve {
        &self.curve
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn elements(&self) -> &[RationalFunction] {
        &self.basis
    }

    pub fn field(&self) -> &Field {
        self.curve.field()
    }

    /// Pole orders at infinity of the basis elements.
    pub fn pole_orders(&self) -> Vec<i64> {
        self.basis
            .iter()
            .map(|f| -f.valuation(&self.curve, &CurvePoint::Infinity).unwrap())
            .collect()
    }

    /// `sum coords[i] * B_i`.
    pub fn combine(&self, coords: &[FieldElement]) -> Result<RationalFunction> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for a basis of dimension {}",
                coords.len(),
                self.dim()
            )));
        }
        let field = self.field();
        let mut a = Poly::zero(field);
        let mut b = Poly::zero(field);
        for (row, k) in self.rows.iter().zip(coords) {
            let (ra, rb) = self.numerator(row);
            a = a.add(&ra.scale(k));
            b = b.add(&rb.scale(k));
        }
        RationalFunction::new(a, b, self.denominator.clone())
    }

    fn numerator(&self, row: &[FieldElement]) -> (Poly, Poly) {
        let field = self.field();
        let mut a = vec![field.zero(); self.columns.len()];
        let mut b = vec![field.zero(); self.columns.len()];
        for (t, v) in self.columns.iter().zip(row) {
            match *t {
                Term::X(i) => a[i] = v.clone(),
                Term::XY(j) => b[j] = v.clone(),
            }
        }
        (Poly::new(field, a), Poly::new(field, b))
    }

    /// Exact coordinates of `fun` in this basis; `NotInSpace` unless
    /// `div(fun) + D >= 0`.
    pub fn coordinates(&self, fun: &RationalFunction) -> Result<Vec<FieldElement>> {
        let field = self.field();
        let not_in = || Error::NotInSpace(format!("{fun} is not in L({})", self.divisor));
        if fun.is_zero() {
            return Ok(vec![field.zero(); self.dim()]);
        }
        let a = self
            .denominator
            .mul(fun.a())
            .exact_div(fun.c())
            .ok_or_else(not_in)?;
        let b = self
            .denominator
            .mul(fun.b())
            .exact_div(fun.c())
            .ok_or_else(not_in)?;
        let mut v = vec![field.zero(); self.columns.len()];
        let mut covered_a = 0;
        let mut covered_b = 0;
        for (slot, t) in v.iter_mut().zip(&self.columns) {
            match *t {
                Term::X(i) => {
                    *slot = a.coeff(i);
                    covered_a = covered_a.max(i + 1);
                }
                Term::XY(j) => {
                    *slot = b.coeff(j);
                    covered_b = covered_b.max(j + 1);
                }
            }
        }
        if a.deg() >= covered_a as i64 || b.deg() >= covered_b as i64 {
            return Err(not_in());
        }
        let coords: Vec<FieldElement> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v;
        for (row, k) in self.rows.iter().zip(&coords) {
            for (r, x) in residual.iter_mut().zip(row) {
                *r = &*r - &(x * k);
            }
        }
        if residual.iter().any(|r| !r.is_zero()) {
            return Err(not_in());
        }
        Ok(coords)
    }

    /// Matrix whose rows are the coordinates of `sub`'s basis in this one.
    pub fn inclusion_matrix(&self, sub: &RRBasis) -> Result<Matrix> {
        let rows = sub
            .elements()
            .iter()
            .map(|f| self.coordinates(f))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(self.field(), self.dim(), rows)
    }
}

/// Basis of `L(D)` by pole-constrained interpolation.
///
/// The ansatz is `(a + b y) / c` where `c` is the product over affine
/// primes `p` of `p^e_p`, with `e_p` the least exponent clearing every
/// positive multiplicity above `p`. The valuation at infinity bounds the
/// degrees of `a` and `b`; each place above a prime of the support adds
/// linear vanishing conditions.
pub fn rr_basis(curve: &HyperellipticCurve, divisor: &Divisor) -> Result<RRBasis> {
    let field = curve.field().clone();
    let genus = curve.genus();

    let mut by_prime: BTreeMap<PolyKey, Vec<(CurvePoint, i64)>> = BTreeMap::new();
    for (p, m) in divisor.terms() {
        if let Some(xm) = p.xminpoly() {
            by_prime
                .entry(PolyKey(xm.clone()))
                .or_default()
                .push((p.clone(), m));
        }
    }

    let mut denominator = Poly::one(&field);
    let mut conditions: Vec<Condition> = Vec::new();
    for (PolyKey(p), pts) in &by_prime {
        let e_p = pts
            .iter()
            .filter(|(_, m)| *m > 0)
            .map(|(pt, m)| {
                let e = ramification(curve, pt);
                (m + e - 1) / e
            })
            .max()
            .unwrap_or(0);
        denominator = denominator.mul(&p.pow(e_p as u32));
        for place in curve.places_over(p)? {
            let n = pts.iter().find(|(q, _)| *q == place).map_or(0, |(_, m)| *m);
            let r = ramification(curve, &place) * e_p - n;
            if r > 0 {
                conditions.push(Condition::new(curve, &place, r as usize)?);
            }
        }
    }

    let budget = divisor.infinity_mult() + 2 * denominator.deg();
    let max_a = budget.div_euclid(2);
    let max_b = (budget - 2 * genus as i64 - 1).div_euclid(2);
    let mut columns: Vec<Term> = (0..=max_a).map(|i| Term::X(i as usize)).collect();
    columns.extend((0..=max_b).map(|j| Term::XY(j as usize)));
    columns.sort_by_key(|t| std::cmp::Reverse(t.weight(genus)));

    let mut constraint_rows: Vec<Vec<FieldElement>> = Vec::new();
    for cond in &conditions {
        let images: Vec<Vec<FieldElement>> = columns.iter().map(|&t| cond.image(t)).collect();
        let len = images.first().map_or(0, |v| v.len());
        for k in 0..len {
            constraint_rows.push(images.iter().map(|col| col[k].clone()).collect());
        }
    }

    let kernel = if columns.is_empty() {
        Vec::new()
    } else if constraint_rows.is_empty() {
        Matrix::identity(&field, columns.len()).row_vecs()
    } else {
        Matrix::from_rows(&field, columns.len(), constraint_rows)?.kernel_basis()
    };

    let (rows, pivots) = if kernel.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        let (r, pivots) = Matrix::from_rows(&field, columns.len(), kernel)?.rref();
        let mut rows: Vec<_> = r.row_vecs().into_iter().take(pivots.len()).collect();
        let mut pivots = pivots;
        rows.reverse();
        pivots.reverse();
        (rows, pivots)
    };

    let mut out = RRBasis {
        curve: curve.clone(),
        divisor: divisor.clone(),
        denominator,
        columns,
        rows,
        pivots,
        basis: Vec::new(),
    };
    out.basis = out
        .rows
        .iter()
        .map(|row| {
            let (a, b) = out.numerator(row);
            RationalFunction::new(a, b, out.denominator.clone())
        })
        .collect::<Result<_>>()?;
    Ok(out)
}

fn ramification(curve: &HyperellipticCurve, p: &CurvePoint) -> i64 {
    if curve.is_ramified(p) {
        2
    } else {
        1
    }
}

/// Orders polynomials canonically so grouping is deterministic.
#[derive(PartialEq, Eq)]
struct PolyKey(Poly);

impl Ord for PolyKey {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.cmp_canonical(&o.0)
    }
}

impl PartialOrd for PolyKey {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

/// `v_P(a + b y) >= r` as a linear map whose kernel is the condition.
enum Condition {
    Split { branch: PadicBranch },
    Inert { modulus: Poly },
    Ramified { mod_a: Poly, mod_b: Poly },
}

impl Condition {
    fn new(curve: &HyperellipticCurve, place: &CurvePoint, r: usize) -> Result<Self> {
        Ok(match place {
            CurvePoint::Inert { xminpoly } => Condition::Inert {
                modulus: xminpoly.pow(r as u32),
            },
            CurvePoint::Closed { xminpoly, ybranch } if ybranch.is_zero() => Condition::Ramified {
                mod_a: xminpoly.pow(r.div_ceil(2) as u32),
                mod_b: xminpoly.pow((r - 1).div_ceil(2) as u32),
            },
            CurvePoint::Closed { .. } => Condition::Split {
                branch: PadicBranch::new(curve, place, r)?,
            },
            CurvePoint::Infinity => unreachable!("infinity is handled by degree bounds"),
        })
    }

    fn image(&self, t: Term) -> Vec<FieldElement> {
        let field = match self {
            Condition::Split { branch } => branch.modulus.field().clone(),
            Condition::Inert { modulus } => modulus.field().clone(),
            Condition::Ramified { mod_a, .. } => mod_a.field().clone(),
        };
        let x_pow = |k: usize| Poly::monomial(field.one(), k);
        let residue = |q: &Poly, m: &Poly| -> Vec<FieldElement> {
            let r = q.rem(m);
            (0..m.deg().max(0) as usize).map(|i| r.coeff(i)).collect()
        };
        let zeros = |m: &Poly| vec![field.zero(); m.deg().max(0) as usize];
        match (self, t) {
            (Condition::Split { branch }, Term::X(i)) => residue(&x_pow(i), &branch.modulus),
            (Condition::Split { branch }, Term::XY(j)) => {
                residue(&x_pow(j).mul(&branch.lift), &branch.modulus)
            }
            (Condition::Inert { modulus }, Term::X(i)) => {
                let mut v = residue(&x_pow(i), modulus);
                v.extend(zeros(modulus));
                v
            }
            (Condition::Inert { modulus }, Term::XY(j)) => {
                let mut v = zeros(modulus);
                v.extend(residue(&x_pow(j), modulus));
                v
            }
            (Condition::Ramified { mod_a, mod_b }, Term::X(i)) => {
                let mut v = residue(&x_pow(i), mod_a);
                v.extend(zeros(mod_b));
                v
            }
            (Condition::Ramified { mod_a, mod_b }, Term::XY(j)) => {
                let mut v = zeros(mod_a);
                v.extend(residue(&x_pow(j), mod_b));
                v
            }
        }
    }
}

pub fn h0(curve: &HyperellipticCurve, divisor: &Divisor) -> Result<usize> {
    Ok(rr_basis(curve, divisor)?.dim())
}

/// `h1(D) = h0(K - D)`.
pub fn h1(curve: &HyperellipticCurve, divisor: &Divisor) -> Result<usize> {
    h0(curve, &curve.canonical_divisor().sub(divisor))
}

/// Coordinates of `fun` in `basis`.
pub fn coordinates(fun: &RationalFunction, basis: &RRBasis) -> Result<Vec<FieldElement>> {
    basis.coordinates(fun)
}

/// Coordinates of `s * t` in `target`.
pub fn product_coordinates(
    s: &RationalFunction,
    t: &RationalFunction,
    target: &RRBasis,
) -> Result<Vec<FieldElement>> {
    target.coordinates(&s.mul(t, target.curve()))
}

/// For `deg D = 0`: a function `phi` with `div(phi) = -D` when `D` is
/// principal, otherwise `None`.
pub fn is_principal(
    curve: &HyperellipticCurve,
    divisor: &Divisor,
) -> Result<Option<RationalFunction>> {
    let d = divisor.degree();
    if d != 0 {
        return Err(Error::NonzeroDegree(d));
    }
    let b = rr_basis(curve, divisor)?;
    Ok((b.dim() == 1).then(|| b.elements()[0].clone()))
}

/// A linear functional on `L(D)`, given by its values on the basis.
#[derive(Clone, Debug)]
pub struct LinearFunctional {
    basis: Arc<RRBasis>,
    coords: Vec<FieldElement>,
}

impl LinearFunctional {
    pub fn new(basis: Arc<RRBasis>, coords: Vec<FieldElement>) -> Result<Self> {
        if coords.len() != basis.dim() {
            return Err(Error::DimensionMismatch(format!(
                "functional of length {} on a space of dimension {}",
                coords.len(),
                basis.dim()
            )));
        }
        Ok(LinearFunctional { basis, coords })
    }

    pub fn basis(&self) -> &Arc<RRBasis> {
        &self.basis
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// Value on the vector with the given coordinates.
    pub fn apply(&self, v: &[FieldElement]) -> FieldElement {
        crate::field::dot(&self.coords, v)
    }

    /// Value on a function of the space.
    pub fn eval(&self, fun: &RationalFunction) -> Result<FieldElement> {
        Ok(self.apply(&self.basis.coordinates(fun)?))
    }
}
