//! Numerology of the rank-2 extension problem: `m = h0(M)` and its Clifford
//! bounds, the projective-space bound `delta0`, and the lower bound for the
//! `k`-th successive minimum.
//!
//! Logarithms are evaluated in fixed point with 30 guard digits beyond the
//! reported 50, so the rounded outputs are within `1e-50` of the true
//! values.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::curve::{Divisor, HyperellipticCurve};
use crate::error::{Error, Result};
use crate::rr::h0;

/// Decimal places in reported values.
pub const OUTPUT_DIGITS: u32 = 50;
const WORK_DIGITS: u32 = OUTPUT_DIGITS + 30;

pub fn compute_m(curve: &HyperellipticCurve, m_div: &Divisor) -> Result<usize> {
    h0(curve, m_div)
}

/// `(n/2, n/2 + max(g - 1, 0))`.
pub fn clifford_sandwich(n: i64, g: i64) -> (i64, i64) {
    (n / 2, n / 2 + (g - 1).max(0))
}

/// `delta0 = n - m + g - 1`.
pub fn theorem1_delta0(n: i64, g: i64, m: i64) -> i64 {
    n - m + g - 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundInputs {
    pub n: i64,
    pub g: i64,
    pub m: i64,
    /// Degree of the number field.
    pub deg_f: i64,
    pub c1sq: BigRational,
    pub k: i64,
}

impl BoundInputs {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDatum(msg));
        const LIMIT: i64 = 1 << 30;
        if [self.n, self.g, self.m, self.deg_f, self.k]
            .iter()
            .any(|v| v.abs() > LIMIT)
        {
            return bad(format!("inputs must not exceed {LIMIT} in absolute value"));
        }
        if self.n <= 0 || self.n % 2 != 0 {
            return bad(format!("n = {} must be a positive even integer", self.n));
        }
        if self.g < 0 {
            return bad(format!("g = {} is negative", self.g));
        }
        if self.deg_f < 1 {
            return bad(format!("degF = {} must be positive", self.deg_f));
        }
        let (lo, hi) = clifford_sandwich(self.n, self.g);
        if self.m < lo.max(1) || self.m > hi {
            return bad(format!("m = {} lies outside [{lo}, {hi}]", self.m));
        }
        if self.k < 1 || self.k > self.n + self.g - 1 {
            return bad(format!(
                "k = {} must lie in [1, n + g - 1 = {}]",
                self.k,
                self.n + self.g - 1
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Theorem2Outcome {
    Applicable {
        /// `A = 1/(n degF) + ln(m (n + g - 1))`, rounded to 50 places.
        a: String,
        /// `c1sq / (2 n degF) - A`, rounded to 50 places.
        bound: String,
        /// Exact rational part of `A`.
        a_rational: String,
        log_argument: String,
        error_bound: String,
    },
    NotApplicable {
        k: i64,
        required_k: i64,
    },
}

/// The lower bound for `mu_k`, provided `k >= n - m + g`.
pub fn theorem2_bound(b: &BoundInputs) -> Result<Theorem2Outcome> {
    b.validate()?;
    let required_k = b.n - b.m + b.g;
    if b.k < required_k {
        return Ok(Theorem2Outcome::NotApplicable { k: b.k, required_k });
    }
    let nd = BigInt::from(b.n * b.deg_f);
    let a_rat = BigRational::new(BigInt::one(), nd.clone());
    let rational_part = &b.c1sq / BigRational::from_integer(&nd * 2) - &a_rat;
    let arg = BigUint::from((b.m * (b.n + b.g - 1)) as u64);
    let log = ln_fixed(&arg, WORK_DIGITS);
    let a_fixed = rational_fixed(&a_rat, WORK_DIGITS) + &log;
    let bound_fixed = rational_fixed(&rational_part, WORK_DIGITS) - &log;
    Ok(Theorem2Outcome::Applicable {
        a: render_fixed(&a_fixed, WORK_DIGITS, OUTPUT_DIGITS),
        bound: render_fixed(&bound_fixed, WORK_DIGITS, OUTPUT_DIGITS),
        a_rational: a_rat.to_string(),
        log_argument: arg.to_string(),
        error_bound: format!("1e-{OUTPUT_DIGITS}"),
    })
}

fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

/// Nearest integer to `num / den`, halves away from zero; `den > 0`.
fn div_round(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.abs().div_rem(den);
    let q = if &r * 2 >= *den { q + 1 } else { q };
    if num.is_negative() {
        -q
    } else {
        q
    }
}

/// `round(x * 10^digits)`.
fn rational_fixed(x: &BigRational, digits: u32) -> BigInt {
    div_round(&(x.numer() * pow10(digits)), x.denom())
}

/// `sum z^(2i+1) / (2i+1)` for `z = num/den` with `|z| <= 1/3`, scaled by
/// `10^digits`. Each term is truncated, so the error is at most a few units.
fn atanh_fixed(num: &BigInt, den: &BigInt, digits: u32) -> BigInt {
    let scale = pow10(digits);
    let mut power = &scale * num / den;
    let z2_num = num * num;
    let z2_den = den * den;
    let mut sum = BigInt::zero();
    let mut i = 0u32;
    while !power.is_zero() {
        sum += &power / BigInt::from(2 * i + 1);
        power = &power * &z2_num / &z2_den;
        i += 1;
    }
    sum
}

/// `ln x * 10^digits` for an integer `x >= 1`, via
/// `ln x = k ln 2 + 2 atanh((x - 2^k)/(x + 2^k))` with `2^k <= x < 2^(k+1)`.
pub fn ln_fixed(x: &BigUint, digits: u32) -> BigInt {
    assert!(!x.is_zero(), "logarithm of zero");
    let guard = digits + 10;
    let k = x.bits() - 1;
    let two_k = BigInt::one() << k;
    let xi = BigInt::from_biguint(Sign::Plus, x.clone());
    let ln2 = atanh_fixed(&BigInt::one(), &BigInt::from(3), guard) * 2;
    let rest = atanh_fixed(&(&xi - &two_k), &(&xi + &two_k), guard) * 2;
    div_round(&(ln2 * BigInt::from(k) + rest), &pow10(10))
}

/// Decimal rendering of `v / 10^work` rounded to `out` places.
pub fn render_fixed(v: &BigInt, work: u32, out: u32) -> String {
    let r = div_round(v, &pow10(work - out));
    let digits = r.abs().to_string();
    let width = out as usize + 1;
    let padded = format!("{digits:0>width$}");
    let (int, frac) = padded.split_at(padded.len() - out as usize);
    let sign = if r.is_negative() { "-" } else { "" };
    if frac.is_empty() {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{frac}")
}

/// Parses an exact decimal (`-12.5`, `3e-2`) or a fraction (`7/3`).
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let err = || Error::Parse(format!("not a decimal number: {s:?}"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
        || exp.unsigned_abs() > 10_000
    {
        return Err(err());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| err())?;
    let shift = exp - frac.len() as i32;
    let mut v = if shift >= 0 {
        BigRational::from_integer(digits * pow10(shift as u32))
    } else {
        BigRational::new(digits, pow10(shift.unsigned_abs()))
    };
    if neg {
        v = -v;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    // rounded to 60 places, from an independent 150-digit evaluation
    const LN2_60: &str = "0.693147180559945309417232121458176568075500134360255254120680";
    const LN10_60: &str = "2.302585092994045684017991454684364207601101488628772976033328";

    #[test]
    fn logarithms_match_reference_digits() {
        let l2 = render_fixed(&ln_fixed(&BigUint::from(2u32), 70), 70, 60);
        assert_eq!(l2, LN2_60);
        let l10 = render_fixed(&ln_fixed(&BigUint::from(10u32), 70), 70, 60);
        assert_eq!(l10, LN10_60);
        assert_eq!(
            render_fixed(&ln_fixed(&BigUint::from(1u32), 70), 70, 5),
            "0.00000"
        );
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal("0").unwrap(), BigRational::zero());
        assert_eq!(
            parse_decimal("-1.25").unwrap(),
            BigRational::new((-5).into(), 4.into())
        );
        assert_eq!(
            parse_decimal("3e-2").unwrap(),
            BigRational::new(3.into(), 100.into())
        );
        assert_eq!(
            parse_decimal("7/3").unwrap(),
            BigRational::new(7.into(), 3.into())
        );
        for bad in ["", "-", "1.2.3", "abc", "1/0", "e5"] {
            assert!(parse_decimal(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn rendering_rounds_half_away_from_zero() {
        assert_eq!(render_fixed(&BigInt::from(-15), 1, 0), "-2");
        assert_eq!(render_fixed(&BigInt::from(1234), 3, 2), "1.23");
        assert_eq!(render_fixed(&BigInt::from(-5), 3, 2), "-0.01");
    }
}
