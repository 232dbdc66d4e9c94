//! Exact coefficient fields: the rationals, prime fields `F_p` and prime
//! power fields `F_p[t]/(minpoly)`, together with the polynomial and
//! matrix machinery built on top of them.

mod fpx;
pub mod matrix;
pub mod poly;
pub mod prime;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
pub use matrix::Matrix;
pub use poly::Poly;

/// Which field a value lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField {
        p: u64,
    },
    /// `F_p[t] / (minpoly)`, coefficients listed from the constant term up.
    ExtensionField {
        p: u64,
        minpoly: Vec<u64>,
    },
}

/// A validated, cheaply clonable handle on a [`FieldDescriptor`].
#[derive(Clone)]
pub struct Field(Arc<FieldDescriptor>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::PrimeField { p } => write!(f, "F_{p}"),
            FieldDescriptor::ExtensionField { p, minpoly } => {
                write!(f, "F_{}^{}", p, minpoly.len() - 1)
            }
        }
    }
}

impl Field {
    pub fn rationals() -> Self {
        Field(Arc::new(FieldDescriptor::Rationals))
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !prime::is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field(Arc::new(FieldDescriptor::PrimeField { p })))
    }

    /// `F_p[t]/(minpoly)`; `minpoly` must be monic and irreducible of degree >= 2.
    pub fn extension(p: u64, minpoly: Vec<u64>) -> Result<Self> {
        if !prime::is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if minpoly.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(
                "minpoly coefficients must be residues in [0, p)".into(),
            ));
        }
        if minpoly.len() < 3 || *minpoly.last().unwrap() != 1 {
            return Err(Error::InvalidField(
                "minpoly must be monic of degree at least 2".into(),
            ));
        }
        if !fpx::is_irreducible(&minpoly, p) {
            return Err(Error::InvalidField(format!(
                "minpoly {minpoly:?} is reducible over F_{p}"
            )));
        }
        Ok(Field(Arc::new(FieldDescriptor::ExtensionField {
            p,
            minpoly,
        })))
    }

    pub fn from_descriptor(d: FieldDescriptor) -> Result<Self> {
        match d {
            FieldDescriptor::Rationals => Ok(Self::rationals()),
            FieldDescriptor::PrimeField { p } => Self::prime(p),
            FieldDescriptor::ExtensionField { p, minpoly } => Self::extension(p, minpoly),
        }
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::PrimeField { p } | FieldDescriptor::ExtensionField { p, .. } => *p,
        }
    }

    /// Degree over the prime field (1 for `Q` and `F_p`).
    pub fn degree(&self) -> usize {
        match &*self.0 {
            FieldDescriptor::ExtensionField { minpoly, .. } => minpoly.len() - 1,
            _ => 1,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(&*self.0, FieldDescriptor::Rationals)
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<BigUint> {
        match &*self.0 {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::PrimeField { p } => Some(BigUint::from(*p)),
            FieldDescriptor::ExtensionField { p, minpoly } => {
                Some(BigUint::from(*p).pow((minpoly.len() - 1) as u32))
            }
        }
    }

    /// Number of elements when it fits in a `u64`.
    pub fn small_order(&self) -> Option<u64> {
        self.order().and_then(|q| q.to_u64())
    }

    fn elem(&self, repr: Repr) -> FieldElement {
        FieldElement {
            field: self.clone(),
            repr,
        }
    }

    pub fn zero(&self) -> FieldElement {
        match &*self.0 {
            FieldDescriptor::Rationals => self.elem(Repr::Rational(BigRational::zero())),
            FieldDescriptor::PrimeField { .. } => self.elem(Repr::Residue(0)),
            FieldDescriptor::ExtensionField { minpoly, .. } => {
                self.elem(Repr::Poly(vec![0; minpoly.len() - 1]))
            }
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElement {
        match &*self.0 {
            FieldDescriptor::Rationals => self.elem(Repr::Rational(BigRational::from(v.clone()))),
            FieldDescriptor::PrimeField { p } => self.elem(Repr::Residue(reduce_bigint(v, *p))),
            FieldDescriptor::ExtensionField { p, minpoly } => {
                let mut digits = vec![0; minpoly.len() - 1];
                digits[0] = reduce_bigint(v, *p);
                self.elem(Repr::Poly(digits))
            }
        }
    }

    /// Image of a rational number; fails in characteristic `p` when `p`
    /// divides the denominator.
    pub fn from_rational(&self, v: &BigRational) -> Result<FieldElement> {
        if !self.is_finite() {
            return Ok(self.elem(Repr::Rational(v.clone())));
        }
        let den = self.from_bigint(v.denom());
        let inv = den
            .inv()
            .ok_or_else(|| Error::Parse(format!("denominator of {v} vanishes in {self}")))?;
        Ok(&self.from_bigint(v.numer()) * &inv)
    }

    /// Element of an extension field from its `F_p` digits (constant term first).
    pub fn from_digits(&self, digits: &[u64]) -> Result<FieldElement> {
        match &*self.0 {
            FieldDescriptor::ExtensionField { p, minpoly } => {
                let k = minpoly.len() - 1;
                if digits.len() > k || digits.iter().any(|&d| d >= *p) {
                    return Err(Error::Parse(format!(
                        "digit list {digits:?} is not a canonical element of {self}"
                    )));
                }
                let mut v = digits.to_vec();
                v.resize(k, 0);
                Ok(self.elem(Repr::Poly(v)))
            }
            FieldDescriptor::PrimeField { p } => match digits {
                [] => Ok(self.zero()),
                [d] if d < p => Ok(self.elem(Repr::Residue(*d))),
                _ => Err(Error::Parse(format!(
                    "{digits:?} is not an element of {self}"
                ))),
            },
            FieldDescriptor::Rationals => Err(Error::Parse(
                "digit lists are only meaningful over finite fields".into(),
            )),
        }
    }

    /// The `index`-th element in the canonical enumeration of a finite field:
    /// base-`p` digits of `index`, least significant digit = constant term.
    pub fn element_from_index(&self, index: u64) -> FieldElement {
        match &*self.0 {
            FieldDescriptor::Rationals => panic!("the rationals are not enumerable by index"),
            FieldDescriptor::PrimeField { p } => self.elem(Repr::Residue(index % p)),
            FieldDescriptor::ExtensionField { p, minpoly } => {
                let mut rest = index;
                let digits = (0..minpoly.len() - 1)
                    .map(|_| {
                        let d = rest % p;
                        rest /= p;
                        d
                    })
                    .collect();
                self.elem(Repr::Poly(digits))
            }
        }
    }

    /// All elements of a (small) finite field in canonical index order.
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElement> + '_> {
        let q = self.small_order().ok_or(Error::InfiniteField)?;
        Ok((0..q).map(move |i| self.element_from_index(i)))
    }

    /// The class of `t` in an extension field.
    pub fn generator(&self) -> Option<FieldElement> {
        match &*self.0 {
            FieldDescriptor::ExtensionField { .. } => self.from_digits(&[0, 1]).ok(),
            _ => None,
        }
    }
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v % BigInt::from(p);
    let r = if r.is_negative() {
        r + BigInt::from(p)
    } else {
        r
    };
    r.to_u64().expect("residue fits in u64")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue(u64),
    Poly(Vec<u64>),
}

/// An element of a [`Field`] in canonical form: reduced fractions with a
/// positive denominator, residues in `[0, p)`, or fully reduced residue
/// polynomials of fixed length.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    repr: Repr,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(r) => r.is_zero(),
            Repr::Residue(r) => *r == 0,
            Repr::Poly(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rational(r) => r.is_one(),
            Repr::Residue(r) => *r == 1,
            Repr::Poly(v) => v[0] == 1 && v[1..].iter().all(|&c| c == 0),
        }
    }

    fn with(&self, repr: Repr) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            repr,
        }
    }

    fn modulus(&self) -> u64 {
        self.field.characteristic()
    }

    fn minpoly(&self) -> &[u64] {
        match &*self.field.0 {
            FieldDescriptor::ExtensionField { minpoly, .. } => minpoly,
            _ => unreachable!("only extension fields carry a minimal polynomial"),
        }
    }

    fn add_ref(&self, o: &FieldElement) -> FieldElement {
        debug_assert!(self.field == o.field, "mixed fields");
        let repr = match (&self.repr, &o.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a + b),
            (Repr::Residue(a), Repr::Residue(b)) => {
                let p = self.modulus();
                Repr::Residue(((*a as u128 + *b as u128) % p as u128) as u64)
            }
            (Repr::Poly(a), Repr::Poly(b)) => {
                let p = self.modulus() as u128;
                Repr::Poly(
                    a.iter()
                        .zip(b)
                        .map(|(&x, &y)| ((x as u128 + y as u128) % p) as u64)
                        .collect(),
                )
            }
            _ => panic!("mixed fields"),
        };
        self.with(repr)
    }

    fn neg_ref(&self) -> FieldElement {
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(-a),
            Repr::Residue(a) => {
                let p = self.modulus();
                Repr::Residue(if *a == 0 { 0 } else { p - a })
            }
            Repr::Poly(a) => {
                let p = self.modulus();
                Repr::Poly(a.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect())
            }
        };
        self.with(repr)
    }

    fn mul_ref(&self, o: &FieldElement) -> FieldElement {
        debug_assert!(self.field == o.field, "mixed fields");
        let repr = match (&self.repr, &o.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a * b),
            (Repr::Residue(a), Repr::Residue(b)) => {
                Repr::Residue(prime::mul_mod(*a, *b, self.modulus()))
            }
            (Repr::Poly(a), Repr::Poly(b)) => {
                let p = self.modulus();
                let m = self.minpoly();
                let mut r = fpx::rem(&fpx::mul(a, b, p), m, p);
                r.resize(m.len() - 1, 0);
                Repr::Poly(r)
            }
            _ => panic!("mixed fields"),
        };
        self.with(repr)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(a.recip()),
            Repr::Residue(a) => Repr::Residue(fpx::inv_mod(*a, self.modulus())),
            Repr::Poly(a) => {
                let p = self.modulus();
                let m = self.minpoly();
                let mut trimmed = a.clone();
                fpx::trim(&mut trimmed);
                let mut r = fpx::inv_modulo(&trimmed, m, p)?;
                r.resize(m.len() - 1, 0);
                Repr::Poly(r)
            }
        };
        Some(self.with(repr))
    }

    /// `self / o`; panics when `o` is zero.
    pub fn div(&self, o: &FieldElement) -> FieldElement {
        self * &o.inv().expect("division by zero")
    }

    pub fn pow(&self, exp: &BigUint) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                acc = &acc * &base;
            }
            if i + 1 < bits {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow_u64(&self, exp: u64) -> FieldElement {
        self.pow(&BigUint::from(exp))
    }

    /// Rational value, for elements of `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Canonical enumeration index, for elements of finite fields small
    /// enough to be indexed by `u64`.
    pub fn index(&self) -> Option<u64> {
        match &self.repr {
            Repr::Rational(_) => None,
            Repr::Residue(r) => Some(*r),
            Repr::Poly(digits) => {
                let p = self.modulus();
                let mut acc: u64 = 0;
                for &d in digits.iter().rev() {
                    acc = acc.checked_mul(p)?.checked_add(d)?;
                }
                Some(acc)
            }
        }
    }

    /// `F_p` digits of a finite field element (constant term first).
    pub fn digits(&self) -> Vec<u64> {
        match &self.repr {
            Repr::Rational(_) => Vec::new(),
            Repr::Residue(r) => vec![*r],
            Repr::Poly(v) => v.clone(),
        }
    }

    /// Whether this element is a square in its field.
    pub fn is_square(&self) -> bool {
        match &self.repr {
            Repr::Rational(r) => {
                if r.is_negative() {
                    return false;
                }
                is_perfect_square(r.numer()) && is_perfect_square(r.denom())
            }
            _ => {
                if self.is_zero() || self.field.characteristic() == 2 {
                    return true;
                }
                let q = self.field.order().unwrap();
                self.pow(&((q - 1u32) / 2u32)).is_one()
            }
        }
    }

    /// A square root, if one exists. Over finite fields this is
    /// Tonelli-Shanks with the first non-residue in index order.
    pub fn sqrt(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if !self.is_square() {
            return None;
        }
        match &self.repr {
            Repr::Rational(r) => {
                let n = r.numer().sqrt();
                let d = r.denom().sqrt();
                Some(self.with(Repr::Rational(BigRational::new(n, d))))
            }
            _ => Some(finite_sqrt(self)),
        }
    }

    /// Total order used for deterministic sorting: by value over `Q`, by
    /// canonical index (most significant digit first) over finite fields.
    pub fn cmp_canonical(&self, other: &FieldElement) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => a.cmp(b),
            (Repr::Residue(a), Repr::Residue(b)) => a.cmp(b),
            (Repr::Poly(a), Repr::Poly(b)) => a.iter().rev().cmp(b.iter().rev()),
            _ => panic!("mixed fields"),
        }
    }

    /// JSON literal: `"a/b"` strings over `Q`, integers over `F_p`, digit
    /// arrays over extension fields.
    pub fn to_json(&self) -> serde_json::Value {
        match &self.repr {
            Repr::Rational(r) => serde_json::Value::String(r.to_string()),
            Repr::Residue(v) => serde_json::Value::from(*v),
            Repr::Poly(v) => serde_json::Value::from(v.clone()),
        }
    }
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &(&s * &s) == n
}

fn finite_sqrt(a: &FieldElement) -> FieldElement {
    let field = a.field.clone();
    let q = field.order().unwrap();
    let q1 = &q - 1u32;
    let mut s = 0u64;
    let mut t = q1.clone();
    while !t.bit(0) {
        t >>= 1;
        s += 1;
    }
    let half = (&q1) / 2u32;
    let minus_one = field.one().neg_ref();
    let mut idx = 2u64;
    let z = loop {
        let c = field.element_from_index(idx);
        if !c.is_zero() && c.pow(&half) == minus_one {
            break c;
        }
        idx += 1;
    };
    let mut m = s;
    let mut c = z.pow(&t);
    let mut tt = a.pow(&t);
    let mut r = a.pow(&((&t + 1u32) / 2u32));
    while !tt.is_one() {
        let mut i = 0;
        let mut probe = tt.clone();
        while !probe.is_one() {
            probe = &probe * &probe;
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = &b * &b;
        }
        m = i;
        c = &b * &b;
        tt = &tt * &c;
        r = &r * &b;
    }
    r
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(r) => write!(f, "{r}"),
            Repr::Residue(v) => write!(f, "{v}"),
            Repr::Poly(v) => {
                let mut terms = Vec::new();
                for (i, &c) in v.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    terms.push(match i {
                        0 => format!("{c}"),
                        1 if c == 1 => "t".to_string(),
                        1 => format!("{c}*t"),
                        _ if c == 1 => format!("t^{i}"),
                        _ => format!("{c}*t^{i}"),
                    });
                }
                if terms.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", terms.join("+"))
                }
            }
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl<'a> $trait<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                self.$inner(rhs)
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$inner(&rhs)
            }
        }
        impl<'a> $trait<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$inner(rhs)
            }
        }
    };
}

impl FieldElement {
    fn sub_ref(&self, o: &FieldElement) -> FieldElement {
        self.add_ref(&o.neg_ref())
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

/// Dot product of two equal-length vectors.
pub fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    assert_eq!(
        a.len(),
        b.len(),
        "dot product of vectors of different lengths"
    );
    let field = a.first().map(|x| x.field.clone());
    match field {
        None => panic!("dot product of empty vectors has no field"),
        Some(field) => a
            .iter()
            .zip(b)
            .fold(field.zero(), |acc, (x, y)| &acc + &(x * y)),
    }
}
