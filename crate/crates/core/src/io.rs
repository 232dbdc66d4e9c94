//! JSON formats for curves, divisors, points, extension classes and
//! subspaces of classes.
//!
//! Inputs are bounded so that hostile files fail fast: see the `MAX_*`
//! constants.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::Value;

use crate::bounds::parse_decimal;
use crate::curve::{CurvePoint, Divisor, HyperellipticCurve};
use crate::error::{Error, Result};
use crate::extension::{ExtensionClass, ExtensionDatum};
use crate::field::{Field, FieldElement, Poly};

pub const MAX_EXTENSION_DEGREE: usize = 16;
pub const MAX_CURVE_DEGREE: usize = 41;
pub const MAX_POINT_DEGREE: usize = 16;
pub const MAX_LITERAL_LEN: usize = 256;
pub const MAX_DIVISOR_TERMS: usize = 64;
pub const MAX_MULTIPLICITY: i64 = 256;
/// Bound on `sum |mult| deg P` for divisors that feed Riemann–Roch
/// computations while parsing.
pub const MAX_DATUM_WEIGHT: i64 = 128;
pub const MAX_SUBSPACE_DIM: usize = 64;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| perr(format!("invalid JSON: {e}")))
}

/// `"Q"`, `{"Fp": p}` or `{"Fpk": {"p": p, "minpoly": [c0, ..., 1]}}`.
pub fn parse_field(v: &Value) -> Result<Field> {
    match v {
        Value::String(s) if s == "Q" => Ok(Field::rationals()),
        Value::Object(o) if o.len() == 1 => {
            if let Some(p) = o.get("Fp") {
                let p = p
                    .as_u64()
                    .ok_or_else(|| perr("Fp must be a positive integer"))?;
                return Field::prime(p);
            }
            if let Some(fpk) = o.get("Fpk") {
                let p = fpk
                    .get("p")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| perr("Fpk needs an integer p"))?;
                let mp = fpk
                    .get("minpoly")
                    .and_then(Value::as_array)
                    .ok_or_else(|| perr("Fpk needs a minpoly array"))?;
                if mp.len() > MAX_EXTENSION_DEGREE + 1 {
                    return Err(perr("extension degree too large"));
                }
                let coeffs = mp
                    .iter()
                    .map(|c| {
                        c.as_u64()
                            .ok_or_else(|| perr("minpoly coefficients must be residues"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                return Field::extension(p, coeffs);
            }
            Err(perr("unknown field descriptor"))
        }
        _ => Err(perr("field must be \"Q\", {\"Fp\": p} or {\"Fpk\": {...}}")),
    }
}

/// An integer, a `"a/b"` string, or (over extension fields) a digit array.
pub fn parse_element(field: &Field, v: &Value) -> Result<FieldElement> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(field.from_i64(i))
            } else if let Some(u) = n.as_u64() {
                Ok(field.from_bigint(&BigInt::from(u)))
            } else {
                Err(perr(format!("{n} is not an exact number")))
            }
        }
        Value::String(s) => {
            if s.len() > MAX_LITERAL_LEN || s.contains(['e', 'E', '.']) {
                return Err(perr(format!("bad element literal {s:?}")));
            }
            field.from_rational(&parse_decimal(s)?)
        }
        Value::Array(ds) if field.degree() > 1 => {
            let digits = ds
                .iter()
                .map(|d| d.as_u64().ok_or_else(|| perr("digits must be residues")))
                .collect::<Result<Vec<_>>>()?;
            field.from_digits(&digits)
        }
        _ => Err(perr(format!("bad element literal {v}"))),
    }
}

/// Coefficient array, constant term first.
pub fn parse_poly(field: &Field, v: &Value, max_degree: usize) -> Result<Poly> {
    let arr = v
        .as_array()
        .ok_or_else(|| perr("polynomial must be a coefficient array"))?;
    if arr.len() > max_degree + 1 {
        return Err(perr(format!("polynomial degree exceeds {max_degree}")));
    }
    let coeffs = arr
        .iter()
        .map(|c| parse_element(field, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(field, coeffs))
}

/// `{"field": ..., "f": [...], "label"?: "..."}`.
pub fn parse_curve_value(v: &Value) -> Result<HyperellipticCurve> {
    let field = parse_field(v.get("field").ok_or_else(|| perr("curve needs a field"))?)?;
    let f = parse_poly(
        &field,
        v.get("f").ok_or_else(|| perr("curve needs f"))?,
        MAX_CURVE_DEGREE,
    )?;
    let c = HyperellipticCurve::new(&field, f)?;
    Ok(match v.get("label") {
        None | Some(Value::Null) => c,
        Some(Value::String(s)) => c.with_label(s.clone()),
        Some(_) => return Err(perr("label must be a string")),
    })
}

pub fn parse_curve(text: &str) -> Result<HyperellipticCurve> {
    parse_curve_value(&parse_json(text)?)
}

/// `"infinity"` or `{"x": ..., "y": ...}`. A scalar `x` is a coordinate, an
/// array is the coefficient list of the minimal polynomial. `y` is a scalar,
/// a polynomial (branch modulo the minimal polynomial), `"inert"`, or
/// omitted for a Weierstrass point.
pub fn parse_point(curve: &HyperellipticCurve, v: &Value) -> Result<CurvePoint> {
    let field = curve.field();
    if v.as_str() == Some("infinity") {
        return Ok(CurvePoint::Infinity);
    }
    let obj = v
        .as_object()
        .ok_or_else(|| perr(format!("bad point literal {v}")))?;
    let xv = obj.get("x").ok_or_else(|| perr("point needs x"))?;
    let xminpoly = match xv {
        Value::Array(_) => parse_poly(field, xv, MAX_POINT_DEGREE)?,
        _ => Poly::linear(&parse_element(field, xv)?),
    };
    match obj.get("y") {
        Some(Value::String(s)) if s == "inert" => curve.inert_point(xminpoly),
        None | Some(Value::Null) => curve.closed_point(xminpoly, Poly::zero(field)),
        Some(yv @ Value::Array(_)) => {
            let y = parse_poly(field, yv, MAX_POINT_DEGREE)?;
            curve.closed_point(xminpoly, y)
        }
        Some(yv) => curve.closed_point(xminpoly, Poly::constant(parse_element(field, yv)?)),
    }
}

/// `[{"point": ..., "mult": k}, ...]`.
pub fn parse_divisor(curve: &HyperellipticCurve, v: &Value) -> Result<Divisor> {
    let arr = v
        .as_array()
        .ok_or_else(|| perr("divisor must be an array of terms"))?;
    if arr.len() > MAX_DIVISOR_TERMS {
        return Err(perr("too many divisor terms"));
    }
    let mut d = Divisor::zero();
    for t in arr {
        let p = parse_point(
            curve,
            t.get("point").ok_or_else(|| perr("term needs a point"))?,
        )?;
        let m = t
            .get("mult")
            .and_then(Value::as_i64)
            .ok_or_else(|| perr("term needs an integer mult"))?;
        if m.abs() > MAX_MULTIPLICITY {
            return Err(perr(format!("multiplicity {m} exceeds {MAX_MULTIPLICITY}")));
        }
        d.add_point(p, m);
    }
    Ok(d)
}

pub fn parse_divisor_str(curve: &HyperellipticCurve, text: &str) -> Result<Divisor> {
    parse_divisor(curve, &parse_json(text)?)
}

pub fn parse_points(curve: &HyperellipticCurve, text: &str) -> Result<Vec<CurvePoint>> {
    let v = parse_json(text)?;
    let arr = v
        .as_array()
        .ok_or_else(|| perr("points file must be an array"))?;
    if arr.len() > MAX_DIVISOR_TERMS {
        return Err(perr("too many points"));
    }
    arr.iter().map(|p| parse_point(curve, p)).collect()
}

/// Loads files referenced from inside other files.
pub trait Resolver {
    fn load(&self, reference: &str) -> Result<String>;
}

/// Resolves paths relative to a base directory.
pub struct FsResolver {
    pub base: PathBuf,
}

impl FsResolver {
    pub fn for_file(path: &Path) -> Self {
        FsResolver {
            base: path.parent().map(Path::to_path_buf).unwrap_or_default(),
        }
    }
}

impl Resolver for FsResolver {
    fn load(&self, reference: &str) -> Result<String> {
        let p = self.base.join(reference);
        std::fs::read_to_string(&p).map_err(|e| perr(format!("cannot read {}: {e}", p.display())))
    }
}

/// Rejects every reference; for self-contained inputs.
pub struct NoResolver;

impl Resolver for NoResolver {
    fn load(&self, reference: &str) -> Result<String> {
        Err(perr(format!(
            "external reference {reference:?} not allowed here"
        )))
    }
}

fn weight(d: &Divisor) -> i64 {
    d.terms().map(|(p, m)| m.abs() * p.degree()).sum()
}

/// `{"curve": object-or-path, "N": divisor, "M": divisor}`.
pub fn parse_datum(v: &Value, resolver: &dyn Resolver) -> Result<Arc<ExtensionDatum>> {
    let cv = v.get("curve").ok_or_else(|| perr("datum needs a curve"))?;
    let curve = match cv {
        Value::String(path) => parse_curve(&resolver.load(path)?)?,
        _ => parse_curve_value(cv)?,
    };
    let n = parse_divisor(&curve, v.get("N").ok_or_else(|| perr("datum needs N"))?)?;
    let m = parse_divisor(&curve, v.get("M").ok_or_else(|| perr("datum needs M"))?)?;
    if weight(&n) > MAX_DATUM_WEIGHT || weight(&m) > MAX_DATUM_WEIGHT {
        return Err(perr(format!(
            "datum divisors exceed weight {MAX_DATUM_WEIGHT}"
        )));
    }
    Ok(Arc::new(ExtensionDatum::new(&curve, n, m)?))
}

fn parse_coords(datum: &ExtensionDatum, v: &Value) -> Result<Vec<FieldElement>> {
    let arr = v
        .as_array()
        .ok_or_else(|| perr("class coordinates must be an array"))?;
    if arr.len() != datum.class_dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} coordinates given, h0(N + K) = {}",
            arr.len(),
            datum.class_dim()
        )));
    }
    arr.iter()
        .map(|c| parse_element(datum.curve().field(), c))
        .collect()
}

/// `{"datum": ..., "e": [...]}`.
pub fn parse_class_file(text: &str, resolver: &dyn Resolver) -> Result<ExtensionClass> {
    let v = parse_json(text)?;
    let datum = parse_datum(
        v.get("datum")
            .ok_or_else(|| perr("class file needs a datum"))?,
        resolver,
    )?;
    let coords = parse_coords(
        &datum,
        v.get("e").ok_or_else(|| perr("class file needs e"))?,
    )?;
    ExtensionClass::new(&datum, coords)
}

/// `{"datum": ..., "V": [[...], ...]}`.
pub fn parse_subspace_file(text: &str, resolver: &dyn Resolver) -> Result<Vec<ExtensionClass>> {
    let v = parse_json(text)?;
    let datum = parse_datum(
        v.get("datum")
            .ok_or_else(|| perr("subspace file needs a datum"))?,
        resolver,
    )?;
    let rows = v
        .get("V")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("subspace file needs V"))?;
    if rows.is_empty() || rows.len() > MAX_SUBSPACE_DIM {
        return Err(perr(format!(
            "V must have between 1 and {MAX_SUBSPACE_DIM} rows"
        )));
    }
    rows.iter()
        .map(|r| ExtensionClass::new(&datum, parse_coords(&datum, r)?))
        .collect()
}

pub fn curve_to_json(curve: &HyperellipticCurve) -> Value {
    let field = match curve.field().descriptor() {
        crate::field::FieldDescriptor::Rationals => Value::from("Q"),
        crate::field::FieldDescriptor::PrimeField { p } => serde_json::json!({ "Fp": p }),
        crate::field::FieldDescriptor::ExtensionField { p, minpoly } => {
            serde_json::json!({ "Fpk": { "p": p, "minpoly": minpoly } })
        }
    };
    let mut out = serde_json::json!({ "field": field, "f": curve.f().to_json() });
    if let Some(l) = curve.label() {
        out["label"] = Value::from(l);
    }
    out
}
