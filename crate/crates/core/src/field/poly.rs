//! Dense univariate polynomials over a [`Field`]: Euclidean arithmetic,
//! squarefreeness, irreducibility and factorization over finite fields, and
//! enumeration of monic irreducibles.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Field, FieldElement};
use crate::error::{Error, Result};

/// A polynomial in `x`, coefficients from the constant term up, with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_i64s(field: &Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    pub fn x(field: &Field) -> Self {
        Self::monomial(field.one(), 1)
    }

    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Self::new(&field, coeffs)
    }

    /// `x - a`
    pub fn linear(a: &FieldElement) -> Self {
        let field = a.field().clone();
        Self::new(&field, vec![-a, field.one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention `deg 0 = -1`.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            &self.field,
            (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect(),
        )
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            &self.field,
            (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(&self.field, out)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(&self.field, coeffs)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dl = d.lead().expect("division by the zero polynomial");
        let dl_inv = dl.inv().unwrap();
        let dd = d.coeffs.len();
        let mut r = self.coeffs.clone();
        if r.len() < dd {
            return (Poly::zero(&self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd + 1];
        for shift in (0..q.len()).rev() {
            let c = &r[shift + dd - 1] * &dl_inv;
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &(&c * di);
            }
            q[shift] = c;
        }
        r.truncate(dd - 1);
        (Poly::new(&self.field, q), Poly::new(&self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// `self / d` when the division is exact.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `g = s*self + t*o` monic.
    pub fn ext_gcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        match r0.lead().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = l.inv().unwrap();
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
        }
    }

    /// Inverse modulo `m`, when `gcd(self, m) = 1`.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn mul_mod(&self, o: &Poly, m: &Poly) -> Poly {
        self.mul(o).rem(m)
    }

    pub fn pow_mod(&self, exp: &BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(m);
        let mut base = self.rem(m);
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
            if i + 1 < bits {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            &self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &self.field.from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Substitute a polynomial for `x`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(&self.field), |acc, c| {
                acc.mul(inner).add(&Poly::constant(c.clone()))
            })
    }

    /// Multiplicity of the nonconstant polynomial `p` in `self != 0`.
    pub fn multiplicity(&self, p: &Poly) -> u32 {
        assert!(!self.is_zero(), "multiplicity in the zero polynomial");
        assert!(p.deg() >= 1, "multiplicity of a constant");
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(p) {
            cur = q;
            k += 1;
        }
        k
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).deg() == 0
    }

    /// Rabin's test over a finite field: `x^(q^k) = x mod f` and
    /// `gcd(x^(q^(k/r)) - x, f) = 1` for every prime `r | k`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let q = self
            .field
            .order()
            .ok_or_else(|| Error::Unsupported("irreducibility testing over Q".into()))?;
        let k = match self.degree() {
            None | Some(0) => return Ok(false),
            Some(1) => return Ok(true),
            Some(k) => k,
        };
        let f = self.monic();
        let x = Poly::x(&self.field);
        let mut frob = vec![x.rem(&f)];
        for i in 1..=k {
            let next = frob[i - 1].pow_mod(&q, &f);
            frob.push(next);
        }
        if frob[k] != frob[0] {
            return Ok(false);
        }
        for r in super::fpx::prime_factors(k) {
            if !f.gcd(&frob[k / r].sub(&x)).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All monic polynomials of degree exactly `d` over a small finite
    /// field, in lexicographic order of the coefficient tuple `(c_0, ..., c_{d-1})`.
    pub fn monic_of_degree(field: &Field, d: usize) -> Result<Vec<Poly>> {
        let q = field.small_order().ok_or(Error::InfiniteField)?;
        let total = q
            .checked_pow(d as u32)
            .filter(|&t| t <= 50_000_000)
            .ok_or_else(|| Error::Unsupported(format!("enumerating {q}^{d} polynomials")))?;
        Ok((0..total)
            .map(|mut i| {
                let mut digits = vec![0u64; d];
                for slot in digits.iter_mut().rev() {
                    *slot = i % q;
                    i /= q;
                }
                let mut coeffs: Vec<FieldElement> = digits
                    .iter()
                    .map(|&c| field.element_from_index(c))
                    .collect();
                coeffs.push(field.one());
                Poly::new(field, coeffs)
            })
            .collect())
    }

    /// Monic irreducible polynomials of degree `1..=max_degree`, by degree
    /// and then in [`Poly::monic_of_degree`] order.
    pub fn monic_irreducibles(field: &Field, max_degree: usize) -> Result<Vec<Poly>> {
        let mut out = Vec::new();
        for d in 1..=max_degree {
            for p in Self::monic_of_degree(field, d)? {
                if p.is_irreducible()? {
                    out.push(p);
                }
            }
        }
        Ok(out)
    }

    /// Order compatible with enumeration: by degree, then lexicographic on
    /// canonical coefficient keys from the constant term up.
    pub fn cmp_canonical(&self, o: &Poly) -> Ordering {
        self.deg().cmp(&o.deg()).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&o.coeffs) {
                match a.cmp_canonical(b) {
                    Ordering::Equal => continue,
                    non_eq => return non_eq,
                }
            }
            Ordering::Equal
        })
    }

    /// Factorization of a nonzero polynomial over a finite field of odd
    /// characteristic into monic irreducibles with multiplicities, sorted
    /// canonically. The leading coefficient is dropped.
    pub fn factor(&self) -> Result<Vec<(Poly, u32)>> {
        if self.is_zero() {
            return Err(Error::Precondition("factoring the zero polynomial".into()));
        }
        let q = self
            .field
            .order()
            .ok_or_else(|| Error::Unsupported("factorization over Q".into()))?;
        if self.field.characteristic() == 2 {
            return Err(Error::Unsupported(
                "factorization in characteristic 2".into(),
            ));
        }
        let mut out = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for (sqf, mult) in squarefree_decomposition(&self.monic(), &q) {
            for (g, d) in distinct_degree(&sqf, &q) {
                for irr in equal_degree(&g, d, &q, &mut rng) {
                    out.push((irr, mult));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp_canonical(&b.0));
        Ok(out)
    }

    /// Render with the given variable name.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let needs_paren = cs.contains('+') || cs[1..].contains('-') || cs.contains('/');
            let cs = if needs_paren { format!("({cs})") } else { cs };
            terms.push(match i {
                0 => cs,
                _ => {
                    let mono = if i == 1 {
                        var.to_string()
                    } else {
                        format!("{var}^{i}")
                    };
                    if c.is_one() {
                        mono
                    } else {
                        format!("{cs}*{mono}")
                    }
                }
            });
        }
        terms.join(" + ")
    }

    /// JSON coefficient list.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(|c| c.to_json()).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// `c^(1/p)` coefficientwise on a polynomial in `x^p`.
fn pth_root(f: &Poly, q: &BigUint) -> Poly {
    let p = f.field.characteristic() as usize;
    let exp = q / BigUint::from(p as u64);
    let coeffs = f.coeffs.iter().step_by(p).map(|c| c.pow(&exp)).collect();
    Poly::new(&f.field, coeffs)
}

fn squarefree_decomposition(f: &Poly, q: &BigUint) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.deg() <= 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c).unwrap();
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).unwrap();
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y.clone();
        c = c.exact_div(&y).unwrap();
    }
    if !c.is_one() {
        let p = f.field.characteristic() as u32;
        for (g, m) in squarefree_decomposition(&pth_root(&c, q), q) {
            out.push((g, m * p));
        }
    }
    out
}

fn distinct_degree(f: &Poly, q: &BigUint) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let x = Poly::x(&f.field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0;
    while rest.deg() >= 2 * (d as i64 + 1) {
        d += 1;
        h = h.pow_mod(q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.exact_div(&g).unwrap();
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let k = rest.deg() as usize;
        out.push((rest, k));
    }
    out
}

fn equal_degree(f: &Poly, d: usize, q: &BigUint, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.deg() as usize;
    if n == d {
        return vec![f.clone()];
    }
    let exp = (q.pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = random_poly(&f.field, n, rng);
        if a.deg() < 1 {
            continue;
        }
        let b = a.pow_mod(&exp, f).sub(&Poly::one(&f.field));
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < f.deg() {
            let h = f.exact_div(&g).unwrap();
            let mut out = equal_degree(&g, d, q, rng);
            out.extend(equal_degree(&h, d, q, rng));
            return out;
        }
    }
}

fn random_poly(field: &Field, len: usize, rng: &mut ChaCha8Rng) -> Poly {
    let p = field.characteristic();
    let k = field.degree();
    let coeffs = (0..len)
        .map(|_| {
            let digits: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            field.from_digits(&digits).unwrap()
        })
        .collect();
    Poly::new(field, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn gcd_over_rationals() {
        let f = q();
        let a = Poly::from_i64s(&f, &[-1, 0, 1]);
        let b = Poly::from_i64s(&f, &[-1, 1]);
        assert_eq!(a.gcd(&b), b);
    }

    #[test]
    fn squarefree_examples() {
        let f = q();
        assert!(Poly::from_i64s(&f, &[1, 0, 0, 1]).is_squarefree());
        assert!(!Poly::from_i64s(&f, &[1, 2, 1]).is_squarefree());
        // x^3 over F_3 has zero derivative
        let f3 = Field::prime(3).unwrap();
        assert!(!Poly::from_i64s(&f3, &[0, 0, 0, 1]).is_squarefree());
    }

    #[test]
    fn monic_irreducible_quadratics_over_f3() {
        let f3 = Field::prime(3).unwrap();
        let quads: Vec<_> = Poly::monic_irreducibles(&f3, 2)
            .unwrap()
            .into_iter()
            .filter(|p| p.deg() == 2)
            .collect();
        // brute force: a monic quadratic is reducible iff it has a root
        let brute = Poly::monic_of_degree(&f3, 2)
            .unwrap()
            .into_iter()
            .filter(|p| f3.elements().unwrap().all(|a| !p.eval(&a).is_zero()))
            .count();
        assert_eq!(quads.len(), 3);
        assert_eq!(brute, 3);
    }

    #[test]
    fn factorization_reconstructs() {
        for field in [
            Field::prime(5).unwrap(),
            Field::extension(3, vec![1, 0, 1]).unwrap(),
        ] {
            let x = Poly::x(&field);
            let one = Poly::one(&field);
            let a = x.add(&one);
            let b = x.mul(&x).add(&field_const(&field, 2));
            let f = a
                .pow(3)
                .mul(&b)
                .mul(&x.pow(field.characteristic() as u32 * 2).add(&one));
            let facs = f.factor().unwrap();
            let rebuilt = facs
                .iter()
                .fold(Poly::one(&field), |acc, (g, m)| acc.mul(&g.pow(*m)));
            assert_eq!(rebuilt, f.monic());
            for (g, _) in &facs {
                assert!(g.is_irreducible().unwrap(), "{g} should be irreducible");
            }
        }
    }

    fn field_const(field: &Field, c: i64) -> Poly {
        Poly::constant(field.from_i64(c))
    }

    #[test]
    fn ext_gcd_identity() {
        let f = q();
        let a = Poly::from_i64s(&f, &[1, 2, 3, 4]);
        let b = Poly::from_i64s(&f, &[5, 0, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert!(g.is_one());
        let inv = a.inv_mod(&b).unwrap();
        assert!(inv.mul_mod(&a, &b).is_one());
    }
}
