use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use semistab::bounds::{
    clifford_sandwich, compute_m, parse_decimal, theorem1_delta0, theorem2_bound, BoundInputs,
    Theorem2Outcome,
};
use semistab::curve::{Divisor, HyperellipticCurve};
use semistab::extension::{
    boundary_matrix, destabilizer_degree_bound, det_test, half_class_helper, prop1_certificate,
    quadric_matrix, search_semistable, DestabilizerOracle, Domain, ExtensionClass, ExtensionDatum,
    Prop1Outcome,
};
use semistab::io::{
    curve_to_json, parse_class_file, parse_curve, parse_divisor_str, parse_points,
    parse_subspace_file, FsResolver,
};
use semistab::rr::{h1, rr_basis};
use semistab::secant::{offsecant_experiment, secant_member, verify_witness, SecantQuery};
use semistab::{fixtures, Error, FieldElement, Result};

use crate::report::Outcome;
use crate::{BoundsCmd, CurveCmd, ExtCmd, GlobalOpts, RrCmd, SecantCmd};

type Ran = (String, Result<Outcome>);

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))
}

/// Inline JSON when the argument looks like JSON, otherwise a file path.
fn json_or_file(arg: &str) -> Result<String> {
    match arg.trim_start().chars().next() {
        Some('[' | '{' | '"') => Ok(arg.to_string()),
        _ => read(arg),
    }
}

fn load_curve(path: &str) -> Result<HyperellipticCurve> {
    parse_curve(&read(path)?)
}

fn load_class(path: &str) -> Result<ExtensionClass> {
    parse_class_file(&read(path)?, &FsResolver::for_file(Path::new(path)))
}

fn coords_json(v: &[FieldElement]) -> Value {
    v.iter()
        .map(FieldElement::to_json)
        .collect::<Vec<_>>()
        .into()
}

fn datum_json(d: &ExtensionDatum) -> Value {
    json!({
        "curve": curve_to_json(d.curve()),
        "N": d.n_divisor().to_json(),
        "M": d.m_divisor().to_json(),
        "L": d.l_divisor().to_json(),
        "n": d.n(),
        "genus": d.genus(),
        "m": d.m(),
        "class_dim": d.class_dim(),
    })
}

fn class_inputs(path: &str, e: &ExtensionClass) -> Value {
    json!({ "class_file": path, "datum": datum_json(e.datum()), "e": coords_json(e.coords()) })
}

/// `(L', M')` from the flags, defaulting to the datum's own `(L, M)`.
fn twist_pair(
    e: &ExtensionClass,
    l: &Option<String>,
    m: &Option<String>,
) -> Result<(Divisor, Divisor)> {
    let c = e.datum().curve();
    match (l, m) {
        (Some(l), Some(m)) => Ok((
            parse_divisor_str(c, &json_or_file(l)?)?,
            parse_divisor_str(c, &json_or_file(m)?)?,
        )),
        _ => Ok((e.datum().l_divisor().clone(), e.datum().m_divisor().clone())),
    }
}

fn standard_datum(curve: &HyperellipticCurve, n: i64) -> Result<Arc<ExtensionDatum>> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::InvalidDatum(format!(
            "n = {n} must be a positive even integer"
        )));
    }
    let b = fixtures::standard_half(curve, n)?;
    let (nd, md) = half_class_helper(curve, &b);
    Ok(Arc::new(ExtensionDatum::new(curve, nd, md)?))
}

pub fn curve(cmd: CurveCmd) -> Ran {
    match cmd {
        CurveCmd::Validate { file } => ("curve validate".into(), curve_validate(&file)),
    }
}

fn curve_validate(file: &str) -> Result<Outcome> {
    let c = load_curve(file)?;
    let finite = c.field().is_finite();
    let points = if finite {
        Some(c.rational_point_count()?)
    } else {
        None
    };
    let weil = if finite {
        Some(c.satisfies_weil_bound()?)
    } else {
        None
    };
    let result = json!({
        "valid": true,
        "genus": c.genus(),
        "degree_f": c.f().deg(),
        "canonical_divisor": c.canonical_divisor().to_json(),
        "rational_points": points,
        "weil_bound_holds": weil,
    });
    Ok(Outcome::new(
        json!({ "file": file, "curve": curve_to_json(&c) }),
        result,
        Value::Null,
    ))
}

pub fn rr(cmd: RrCmd) -> Ran {
    match cmd {
        RrCmd::Basis { curve, divisor } => ("rr basis".into(), rr_basis_cmd(&curve, &divisor)),
    }
}

fn rr_basis_cmd(curve_path: &str, divisor: &str) -> Result<Outcome> {
    let c = load_curve(curve_path)?;
    let d = parse_divisor_str(&c, &json_or_file(divisor)?)?;
    if d.terms().map(|(p, m)| m.abs() * p.degree()).sum::<i64>() > semistab::io::MAX_DATUM_WEIGHT {
        return Err(Error::InvalidDivisor("divisor too large".into()));
    }
    let b = rr_basis(&c, &d)?;
    let result = json!({
        "degree": d.degree(),
        "h0": b.dim(),
        "h1": h1(&c, &d)?,
        "pole_orders_at_infinity": b.pole_orders(),
    });
    let witnesses =
        json!({ "basis": b.elements().iter().map(|f| f.to_json()).collect::<Vec<_>>() });
    Ok(Outcome::new(
        json!({ "curve": curve_to_json(&c), "divisor": d.to_json() }),
        result,
        witnesses,
    ))
}

pub fn ext(cmd: ExtCmd) -> Ran {
    match cmd {
        ExtCmd::Det { class_file } => ("ext det".into(), ext_det(&class_file)),
        ExtCmd::Prop1 {
            class_file,
            l_prime,
            m_prime,
        } => (
            "ext prop1".into(),
            ext_prop1(&class_file, &l_prime, &m_prime),
        ),
        ExtCmd::Search { subspace_file } => ("ext search".into(), ext_search(&subspace_file)),
        ExtCmd::Destab {
            class_file,
            max_degree,
            points,
            l_prime,
            m_prime,
        } => (
            "ext destab".into(),
            ext_destab(&class_file, max_degree, &points, &l_prime, &m_prime),
        ),
    }
}

fn ext_det(path: &str) -> Result<Outcome> {
    let e = load_class(path)?;
    let q = quadric_matrix(&e);
    let result =
        json!({ "det_test": det_test(&e), "determinant": q.det()?.to_json(), "size": q.rows() });
    Ok(Outcome::new(
        class_inputs(path, &e),
        result,
        json!({ "quadric": q.to_json() }),
    ))
}

fn ext_prop1(path: &str, l: &Option<String>, m: &Option<String>) -> Result<Outcome> {
    let e = load_class(path)?;
    let (lp, mp) = twist_pair(&e, l, m)?;
    let outcome = prop1_certificate(&e, &lp, &mp)?;
    let b = boundary_matrix(&e, &lp, &mp)?;
    let (status, case) = match outcome {
        Prop1Outcome::CertifiedSemistable(c) => (
            "certified_semistable",
            Some(format!("{c:?}").to_lowercase()),
        ),
        Prop1Outcome::Inconclusive => ("inconclusive", None),
    };
    let mut inputs = class_inputs(path, &e);
    inputs["L_prime"] = lp.to_json();
    inputs["M_prime"] = mp.to_json();
    let result = json!({
        "outcome": status,
        "case": case,
        "rank": b.matrix.rank(),
        "rows": b.matrix.rows(),
        "cols": b.matrix.cols(),
    });
    Ok(Outcome::new(
        inputs,
        result,
        json!({ "boundary_matrix": b.matrix.to_json() }),
    ))
}

fn ext_search(path: &str) -> Result<Outcome> {
    let v = parse_subspace_file(&read(path)?, &FsResolver::for_file(Path::new(path)))?;
    let d = v[0].datum().clone();
    let inputs = json!({
        "subspace_file": path,
        "datum": datum_json(&d),
        "V": v.iter().map(|e| coords_json(e.coords())).collect::<Vec<_>>(),
    });
    match search_semistable(&v) {
        Ok(r) => {
            let result = json!({
                "found": true,
                "coefficients": r.coefficients,
                "bound": r.bound,
                "max_abs_coefficient": r.coefficients.iter().map(|c| c.abs()).max(),
                "examined": r.examined,
            });
            Ok(Outcome::new(
                inputs,
                result,
                json!({ "e": coords_json(r.class.coords()) }),
            ))
        }
        Err(Error::SearchExhausted { bound, examined }) => Ok(Outcome {
            inputs,
            result: json!({ "found": false, "bound": bound, "examined": examined }),
            witnesses: Value::Null,
            not_applicable: true,
        }),
        Err(e) => Err(e),
    }
}

fn domain_from(e: &ExtensionClass, points: &Option<String>) -> Result<Domain> {
    Ok(match points {
        Some(p) => Domain::Points(parse_points(e.datum().curve(), &json_or_file(p)?)?),
        None => Domain::Exhaustive,
    })
}

fn ext_destab(
    path: &str,
    max_degree: Option<usize>,
    points: &Option<String>,
    l: &Option<String>,
    m: &Option<String>,
) -> Result<Outcome> {
    let e = load_class(path)?;
    let (lp, mp) = twist_pair(&e, l, m)?;
    let domain = domain_from(&e, points)?;
    let bound = destabilizer_degree_bound(lp.degree(), mp.degree());
    let oracle = DestabilizerOracle::bounded(e.datum(), &lp, &mp, &domain, max_degree)?;
    let found = oracle.find(&e)?;
    // only a full exhaustive scan proves semi-stability
    let complete = matches!(domain, Domain::Exhaustive)
        && max_degree.is_none_or(|c| bound.is_none_or(|b| c >= b));
    let semistable = match &found {
        Some(_) => Some(false),
        None if complete => Some(true),
        None => None,
    };
    let mut inputs = class_inputs(path, &e);
    inputs["L_prime"] = lp.to_json();
    inputs["M_prime"] = mp.to_json();
    inputs["max_degree"] = json!(max_degree);
    inputs["points"] = match &domain {
        Domain::Points(p) => p.iter().map(|x| x.to_json()).collect::<Vec<_>>().into(),
        Domain::Exhaustive => Value::Null,
    };
    let result = json!({
        "destabilized": found.is_some(),
        "semistable": semistable,
        "degree_bound": bound,
        "candidates": oracle.candidate_count(),
    });
    let witnesses = json!({ "D": found.map(|d| d.to_json()) });
    Ok(Outcome::new(inputs, result, witnesses))
}

pub fn secant(cmd: SecantCmd, global: &GlobalOpts) -> Ran {
    match cmd {
        SecantCmd::Member {
            class_file,
            d,
            points,
        } => (
            "secant member".into(),
            secant_member_cmd(&class_file, d, &points),
        ),
        SecantCmd::Experiment {
            curve,
            n,
            dim,
            trials,
        } => (
            "secant experiment".into(),
            secant_experiment(&curve, n, dim, trials, global.seed),
        ),
    }
}

fn secant_member_cmd(path: &str, d: usize, points: &Option<String>) -> Result<Outcome> {
    let e = load_class(path)?;
    let domain = domain_from(&e, points)?;
    let mut inputs = class_inputs(path, &e);
    inputs["d"] = json!(d);
    let q = SecantQuery {
        class: e.clone(),
        d,
        domain,
    };
    let w = secant_member(&q)?;
    let verified = match &w {
        Some(div) => Some(verify_witness(&e, div)?),
        None => None,
    };
    let result = json!({ "member": w.is_some(), "witness_verified": verified });
    Ok(Outcome::new(
        inputs,
        result,
        json!({ "D": w.map(|x| x.to_json()) }),
    ))
}

fn secant_experiment(
    curve_path: &str,
    n: i64,
    dim: usize,
    trials: u64,
    seed: u64,
) -> Result<Outcome> {
    let c = load_curve(curve_path)?;
    if n > 64 || trials > 100_000 {
        return Err(Error::Unsupported(
            "n at most 64 and at most 100000 trials".into(),
        ));
    }
    let d = standard_datum(&c, n)?;
    let rep = offsecant_experiment(&d, dim, trials, seed)?;
    let inputs = json!({
        "curve": curve_to_json(&c),
        "datum": datum_json(&d),
        "n": n,
        "dim": dim,
        "trials": trials,
        "seed": seed,
    });
    let mut result = serde_json::to_value(&rep).expect("report serializes");
    let witnesses = result
        .as_object_mut()
        .and_then(|o| o.remove("trials"))
        .unwrap_or(Value::Null);
    Ok(Outcome::new(inputs, result, json!({ "trials": witnesses })))
}

pub fn bounds(cmd: BoundsCmd) -> Ran {
    match cmd {
        BoundsCmd::M { n, g, curve } => ("bounds m".into(), bounds_m(n, g, &curve)),
        BoundsCmd::Delta0 { n, g, m } => ("bounds delta0".into(), bounds_delta0(n, g, m)),
        BoundsCmd::Theorem2 {
            n,
            g,
            m,
            deg_f,
            c1sq,
            k,
        } => (
            "bounds theorem2".into(),
            bounds_theorem2(n, g, m, deg_f, &c1sq, k),
        ),
    }
}

fn check_n_g(n: i64, g: i64) -> Result<()> {
    if n < 2 || n % 2 != 0 || n > 1 << 30 {
        return Err(Error::InvalidDatum(format!(
            "n = {n} must be a positive even integer"
        )));
    }
    if !(0..=1 << 30).contains(&g) {
        return Err(Error::InvalidDatum(format!("g = {g} out of range")));
    }
    Ok(())
}

fn bounds_m(n: i64, g: Option<i64>, curve: &Option<String>) -> Result<Outcome> {
    let c = curve.as_deref().map(load_curve).transpose()?;
    let g = match (&c, g) {
        (Some(c), Some(g)) if g != c.genus() as i64 => {
            return Err(Error::InvalidDatum(format!(
                "--g {g} but the curve has genus {}",
                c.genus()
            )))
        }
        (Some(c), _) => c.genus() as i64,
        (None, Some(g)) => g,
        (None, None) => {
            return Err(Error::InvalidDatum(
                "either --g or --curve is required".into(),
            ))
        }
    };
    check_n_g(n, g)?;
    let (lo, hi) = clifford_sandwich(n, g);
    let mut inputs = json!({ "n": n, "g": g });
    let (m, source) = match &c {
        Some(c) => {
            if n > 64 {
                return Err(Error::Unsupported("n at most 64 with --curve".into()));
            }
            let d = standard_datum(c, n)?;
            inputs["curve"] = curve_to_json(c);
            inputs["M"] = d.m_divisor().to_json();
            (Some(compute_m(c, d.m_divisor())? as i64), "riemann_roch")
        }
        None if n > 2 * g - 2 => (Some(n / 2), "degree"),
        None => (None, "undetermined"),
    };
    let result = json!({ "lo": lo, "hi": hi, "m": m, "source": source });
    Ok(Outcome::new(inputs, result, Value::Null))
}

fn bounds_delta0(n: i64, g: i64, m: i64) -> Result<Outcome> {
    check_n_g(n, g)?;
    let (lo, hi) = clifford_sandwich(n, g);
    if m < lo || m > hi {
        return Err(Error::InvalidDatum(format!(
            "m = {m} lies outside [{lo}, {hi}]"
        )));
    }
    let d = (n - 2) / 2;
    let delta0 = theorem1_delta0(n, g, m);
    let result = json!({
        "delta0": delta0,
        "secant_index": d,
        "equals_d_plus_g": (n > 2 * g - 2).then_some(delta0 == d + g),
    });
    Ok(Outcome::new(
        json!({ "n": n, "g": g, "m": m }),
        result,
        Value::Null,
    ))
}

fn bounds_theorem2(n: i64, g: i64, m: i64, deg_f: i64, c1sq: &str, k: i64) -> Result<Outcome> {
    if c1sq.len() > 512 {
        return Err(Error::Parse("c1sq literal too long".into()));
    }
    let b = BoundInputs {
        n,
        g,
        m,
        deg_f,
        c1sq: parse_decimal(c1sq)?,
        k,
    };
    let outcome = theorem2_bound(&b)?;
    let not_applicable = matches!(outcome, Theorem2Outcome::NotApplicable { .. });
    let inputs =
        json!({ "n": n, "g": g, "m": m, "degF": deg_f, "c1sq": b.c1sq.to_string(), "k": k });
    Ok(Outcome {
        inputs,
        result: serde_json::to_value(&outcome).expect("outcome serializes"),
        witnesses: Value::Null,
        not_applicable,
    })
}
