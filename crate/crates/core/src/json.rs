//! JSON encodings of the toolkit's values.
//!
//! Rationals are strings `"p/q"` (integers may also be JSON numbers),
//! points are arrays of four rationals, polynomials are
//! `{"vars": n, "terms": [{"exp": [..], "coef": "p/q"}]}`. Parse errors
//! carry the JSON path of the offending value.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::JsonError;
use crate::groebner::Ideal;
use crate::linalg::{RatMatrix, Rational};
use crate::poly::{Exponents, MultiPoly};
use crate::product::{ClassifiedProduct, ProductKind};
use crate::projgeom::{BinaryForm, LineP3, ParamCurve, ProjPoint};
use crate::quadric::{Quadric, SclResult, SectionStatus, Smoothness};

fn err(path: &str, message: impl Into<String>) -> JsonError {
    JsonError {
        path: path.to_string(),
        message: message.into(),
    }
}

fn child(path: &str, key: &str) -> String {
    format!("{path}.{key}")
}

fn index(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}

/// Parses a document, reporting syntax errors by line and column.
pub fn parse_document(text: &str) -> Result<Value, JsonError> {
    serde_json::from_str(text).map_err(|e| err(&format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn parse_rational(v: &Value, path: &str) -> Result<Rational, JsonError> {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            BigInt::from_str(&s)
                .map(Rational::from_integer)
                .map_err(|_| err(path, format!("number {s} is not an integer; write fractions as \"p/q\"")))
        }
        Value::String(s) => parse_rational_str(s).map_err(|m| err(path, m)),
        other => Err(err(path, format!("expected a rational, found {other}"))),
    }
}

pub fn parse_rational_str(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let int = |t: &str| BigInt::from_str(t.trim()).map_err(|_| format!("malformed rational \"{s}\""));
    match s.split_once('/') {
        None => int(s).map(Rational::from_integer),
        Some((n, d)) => {
            let (n, d) = (int(n)?, int(d)?);
            if d.is_zero() {
                return Err(format!("malformed rational \"{s}\": zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
    }
}

fn as_array<'a>(v: &'a Value, path: &str, len: Option<usize>) -> Result<&'a Vec<Value>, JsonError> {
    let a = v.as_array().ok_or_else(|| err(path, "expected an array"))?;
    if let Some(n) = len {
        if a.len() != n {
            return Err(err(path, format!("expected {n} entries, found {}", a.len())));
        }
    }
    Ok(a)
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, JsonError> {
    v.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn field<'a>(o: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, JsonError> {
    o.get(key).ok_or_else(|| err(path, format!("missing field \"{key}\"")))
}

fn parse_usize(v: &Value, path: &str) -> Result<usize, JsonError> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| err(path, "expected a nonnegative integer"))
}

pub fn parse_rational_vec(v: &Value, path: &str, len: Option<usize>) -> Result<Vec<Rational>, JsonError> {
    as_array(v, path, len)?
        .iter()
        .enumerate()
        .map(|(i, x)| parse_rational(x, &index(path, i)))
        .collect()
}

pub fn rational_vec_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_json).collect())
}

pub fn point_to_json(p: &ProjPoint) -> Value {
    rational_vec_to_json(&p.coords())
}

pub fn parse_point(v: &Value, path: &str) -> Result<ProjPoint, JsonError> {
    let c = parse_rational_vec(v, path, Some(4))?;
    ProjPoint::new(&c).map_err(|e| err(path, e.to_string()))
}

pub fn line_to_json(l: &LineP3) -> Value {
    let rows: Vec<Value> = (0..2).map(|r| rational_vec_to_json(l.span().row(r))).collect();
    json!({ "points": rows, "pluecker": rational_vec_to_json(l.pluecker()) })
}

pub fn parse_line(v: &Value, path: &str) -> Result<LineP3, JsonError> {
    let o = as_object(v, path)?;
    if let Some(pts) = o.get("points") {
        let p = child(path, "points");
        let a = as_array(pts, &p, Some(2))?;
        let (x, y) = (parse_point(&a[0], &index(&p, 0))?, parse_point(&a[1], &index(&p, 1))?);
        LineP3::from_points(&x, &y).map_err(|e| err(&p, e.to_string()))
    } else if let Some(pl) = o.get("pluecker") {
        let p = child(path, "pluecker");
        let c = parse_rational_vec(pl, &p, Some(6))?;
        let arr: [Rational; 6] = c.try_into().expect("length checked");
        LineP3::from_pluecker(&arr).map_err(|e| err(&p, e.to_string()))
    } else {
        Err(err(path, "a line needs \"points\" or \"pluecker\""))
    }
}

pub fn curve_to_json(c: &ParamCurve) -> Value {
    let forms: Vec<Value> = c.forms().iter().map(|f| rational_vec_to_json(f.coeffs())).collect();
    json!({ "degree": c.degree(), "forms": forms })
}

/// A line (`points`/`pluecker`), a conic (`through`, `B`, `C`), or
/// explicit binary forms (`forms`, coefficients of `s^d, s^{d-1} t, ..., t^d`).
pub fn parse_curve(v: &Value, path: &str) -> Result<ParamCurve, JsonError> {
    let o = as_object(v, path)?;
    if o.contains_key("points") || o.contains_key("pluecker") {
        return Ok(parse_line(v, path)?.parametrization());
    }
    if let Some(a) = o.get("through") {
        let a = parse_point(a, &child(path, "through"))?;
        let b = parse_point(field(o, "B", path)?, &child(path, "B"))?;
        let c = parse_point(field(o, "C", path)?, &child(path, "C"))?;
        return ParamCurve::conic(&a, &b, &c).map_err(|e| err(path, e.to_string()));
    }
    if let Some(fs) = o.get("forms") {
        let p = child(path, "forms");
        let arr = as_array(fs, &p, Some(4))?;
        let mut forms = Vec::with_capacity(4);
        for (i, f) in arr.iter().enumerate() {
            let coeffs = parse_rational_vec(f, &index(&p, i), None)?;
            if coeffs.is_empty() {
                return Err(err(&index(&p, i), "empty coefficient list"));
            }
            forms.push(BinaryForm::new(coeffs));
        }
        let forms: [BinaryForm; 4] = forms.try_into().expect("length checked");
        return ParamCurve::new(forms).map_err(|e| err(path, e.to_string()));
    }
    Err(err(path, "a curve needs \"points\", \"pluecker\", \"through\" or \"forms\""))
}

pub fn poly_to_json(p: &MultiPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(e, c)| json!({ "exp": e.as_slice(), "coef": rational_to_json(c) }))
        .collect();
    json!({ "vars": p.nvars(), "terms": terms })
}

pub fn parse_poly(v: &Value, path: &str) -> Result<MultiPoly, JsonError> {
    let o = as_object(v, path)?;
    let n = parse_usize(field(o, "vars", path)?, &child(path, "vars"))?;
    parse_poly_terms(o, n, path)
}

fn parse_poly_terms(o: &Map<String, Value>, n: usize, path: &str) -> Result<MultiPoly, JsonError> {
    let tp = child(path, "terms");
    let mut out = MultiPoly::zero(n);
    for (i, t) in as_array(field(o, "terms", path)?, &tp, None)?.iter().enumerate() {
        let ip = index(&tp, i);
        let to = as_object(t, &ip)?;
        let ep = child(&ip, "exp");
        let exp = as_array(field(to, "exp", &ip)?, &ep, Some(n))?
            .iter()
            .enumerate()
            .map(|(k, x)| {
                x.as_u64()
                    .and_then(|e| u32::try_from(e).ok())
                    .ok_or_else(|| err(&index(&ep, k), "expected a small nonnegative integer"))
            })
            .collect::<Result<Vec<u32>, _>>()?;
        let coef = parse_rational(field(to, "coef", &ip)?, &child(&ip, "coef"))?;
        out = &out + &MultiPoly::monomial(n, Exponents::new(exp), coef);
    }
    Ok(out)
}

pub fn ideal_to_json(i: &Ideal) -> Value {
    json!({ "vars": i.nvars(), "generators": i.generators().iter().map(poly_to_json).collect::<Vec<_>>() })
}

/// `{"vars": n, "generators": [poly, ...]}`; generators may omit `vars`.
pub fn parse_ideal(v: &Value, path: &str) -> Result<Ideal, JsonError> {
    let o = as_object(v, path)?;
    let n = parse_usize(field(o, "vars", path)?, &child(path, "vars"))?;
    let gp = child(path, "generators");
    let gens = as_array(field(o, "generators", path)?, &gp, None)?
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let ip = index(&gp, i);
            let go = as_object(g, &ip)?;
            if let Some(m) = go.get("vars") {
                let m = parse_usize(m, &child(&ip, "vars"))?;
                if m != n {
                    return Err(err(&ip, format!("generator has {m} variables, ideal has {n}")));
                }
            }
            parse_poly_terms(go, n, &ip)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ideal::new(n, gens).map_err(|e| err(path, e.to_string()))
}

pub fn quadric_to_json(q: &Quadric) -> Value {
    json!({
        "coefficients": rational_vec_to_json(&q.coefficients()),
        "equation": q.to_string(),
    })
}

/// `{"coefficients": [c0..c9]}` or a polynomial object.
pub fn parse_quadric(v: &Value, path: &str) -> Result<Quadric, JsonError> {
    let o = as_object(v, path)?;
    if let Some(c) = o.get("coefficients") {
        let p = child(path, "coefficients");
        let c = parse_rational_vec(c, &p, Some(10))?;
        return Quadric::from_coefficients(&c).map_err(|e| err(&p, e.to_string()));
    }
    let f = parse_poly(v, path)?;
    Quadric::from_poly(&f).map_err(|e| err(path, e.to_string()))
}

pub fn parse_centers(v: &Value, path: &str) -> Result<[ProjPoint; 4], JsonError> {
    let a = as_array(v, path, Some(4))?;
    let pts = a
        .iter()
        .enumerate()
        .map(|(i, p)| parse_point(p, &index(path, i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(pts.try_into().expect("length checked"))
}

pub fn centers_to_json(c: &[ProjPoint]) -> Value {
    Value::Array(c.iter().map(point_to_json).collect())
}

pub fn matrix_to_json(m: &RatMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| rational_vec_to_json(m.row(r))).collect())
}

pub fn smoothness_to_json(s: &Smoothness) -> Value {
    match s {
        Smoothness::Smooth => json!({ "kind": "smooth" }),
        Smoothness::Cone { rank, vertex_space } => json!({
            "kind": "cone",
            "rank": rank,
            "vertex_space": vertex_space.iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "vertex": s.vertex().as_ref().map(point_to_json),
        }),
    }
}

pub fn scl_to_json(r: &SclResult) -> Value {
    let sections: Vec<Value> = r
        .sections
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut o = json!({ "plane": i, "status": s.label() });
            if let SectionStatus::ReducibleConic(c) = s {
                o["center"] = point_to_json(c);
            }
            o
        })
        .collect();
    json!({
        "sections": sections,
        "all_four_reducible": r.all_four_reducible,
        "centers_distinct": r.centers_distinct,
        "off_other_planes": r.off_other_planes,
        "centers_det": r.centers_det.as_ref().map(rational_to_json),
        "coplanar": r.coplanar(),
    })
}

pub fn product_to_json(c: &ClassifiedProduct) -> Value {
    let kind = match &c.kind {
        ProductKind::PointImage(p) => json!({ "kind": "point", "point": point_to_json(p) }),
        ProductKind::CurveImage { plane } => json!({
            "kind": "curve",
            "plane": plane.as_ref().map(|v| rational_vec_to_json(v)),
        }),
        ProductKind::PlaneImage(f) => json!({ "kind": "plane", "linear_form": rational_vec_to_json(f) }),
        ProductKind::SurfaceImage(s) => json!({
            "kind": "surface",
            "degree": s.degree(),
            "equation": s.equation().to_string(),
            "polynomial": poly_to_json(s.equation()),
        }),
    };
    json!({
        "image": kind,
        "jacobian_ranks": c.jacobian_ranks,
        "kernel_dims": c.kernel_dims.iter().map(|(d, k)| json!({ "degree": d, "dim": k })).collect::<Vec<_>>(),
    })
}
