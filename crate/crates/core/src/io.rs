//! JSON file formats for node sets and bases.
//!
//! Nodes: `{"n": 3, "points": [[c, c, c], ...]}` where each coordinate is
//! `[num, den]`, an integer, or a string (`"7/4"`, `"0.25"`). Decimal input
//! is exact unless a snapping tolerance is supplied, in which case each
//! decimal is replaced by the simplest rational within the tolerance and the
//! move is reported.
//!
//! Bases: either a bare list of functions or `{"n": 3, "functions": [...]}`.
//! A function is a shorthand string (`"x1^2*x3 + x2"`) or a list of terms
//! `{"exponents": [2, 0, 1], "coeff": [num, den]}` (`coeff` defaults to 1).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::interp::poly::{BasisFunction, Monomial};
use crate::nodeset::Point;
use crate::rational::{parse_rational, parse_snapped, Snap};

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedNodes {
    pub n: usize,
    pub points: Vec<Point>,
    pub snaps: Vec<Snap>,
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn big_int(v: &Value) -> Result<BigInt> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(perr(format!("expected an integer, found {other}"))),
    };
    text.trim()
        .parse()
        .map_err(|_| perr(format!("expected an integer, found {text}")))
}

fn exact_pair(items: &[Value]) -> Result<BigRational> {
    let [num, den] = items else {
        return Err(perr("a rational must be a [num, den] pair"));
    };
    let (num, den) = (big_int(num)?, big_int(den)?);
    if den.is_zero() {
        return Err(perr("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

fn coordinate(v: &Value, tol: Option<&BigRational>, snaps: &mut Vec<Snap>) -> Result<BigRational> {
    match v {
        Value::Array(items) => exact_pair(items),
        Value::Number(n) => {
            let (x, snap) = parse_snapped(&n.to_string(), tol)?;
            snaps.extend(snap);
            Ok(x)
        }
        Value::String(s) => {
            let (x, snap) = parse_snapped(s, tol)?;
            snaps.extend(snap);
            Ok(x)
        }
        other => Err(perr(format!("bad coordinate {other}"))),
    }
}

pub fn parse_nodes_json(text: &str, snap_tol: Option<&BigRational>) -> Result<ParsedNodes> {
    let root: Value = serde_json::from_str(text).map_err(|e| perr(format!("invalid JSON: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| perr("node file must be an object {n, points}"))?;
    let rows = obj
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("missing \"points\" array"))?;
    let mut snaps = Vec::new();
    let mut points = Vec::with_capacity(rows.len());
    for row in rows {
        let coords = row
            .as_array()
            .ok_or_else(|| perr(format!("a point must be an array, found {row}")))?;
        let coords = coords
            .iter()
            .map(|c| coordinate(c, snap_tol, &mut snaps))
            .collect::<Result<Vec<_>>>()?;
        points.push(Point::new(coords));
    }
    let n = match obj.get("n") {
        Some(v) => v.as_u64().ok_or_else(|| perr("\"n\" must be a positive integer"))? as usize,
        None => points
            .first()
            .map(Point::n)
            .ok_or_else(|| perr("missing \"n\" and no points"))?,
    };
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    if let Some(p) = points.iter().find(|p| p.n() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.n(),
        });
    }
    Ok(ParsedNodes { n, points, snaps })
}

/// Writes points in the exact `[num, den]` form read by [`parse_nodes_json`].
pub fn nodes_to_json(n: usize, points: &[Point]) -> Value {
    let num = |x: &BigInt| Value::Number(x.to_string().parse().expect("integer literal"));
    json!({
        "n": n,
        "points": points
            .iter()
            .map(|p| p.coords().iter().map(|c| json!([num(c.numer()), num(c.denom())])).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

fn coefficient(v: Option<&Value>) -> Result<BigRational> {
    match v {
        None => Ok(BigRational::one()),
        Some(Value::Array(items)) => exact_pair(items),
        Some(Value::Number(n)) => parse_rational(&n.to_string()),
        Some(Value::String(s)) => parse_rational(s),
        Some(other) => Err(perr(format!("bad coefficient {other}"))),
    }
}

fn term_list(items: &[Value], n: Option<usize>) -> Result<BasisFunction> {
    let mut terms = Vec::with_capacity(items.len());
    for t in items {
        let obj = t
            .as_object()
            .ok_or_else(|| perr(format!("a term must be an object, found {t}")))?;
        let exps = obj
            .get("exponents")
            .and_then(Value::as_array)
            .ok_or_else(|| perr("term without \"exponents\""))?
            .iter()
            .map(|e| {
                e.as_u64()
                    .and_then(|e| u32::try_from(e).ok())
                    .ok_or_else(|| perr(format!("bad exponent {e}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        terms.push((Monomial::new(exps), coefficient(obj.get("coeff"))?));
    }
    let n = n
        .or_else(|| terms.first().map(|(m, _)| m.n()))
        .ok_or_else(|| perr("cannot infer n from an empty term list"))?;
    BasisFunction::new(n, terms)
}

/// Parses a basis file. `n_hint` is used when the file does not state `n`.
pub fn parse_basis_json(text: &str, n_hint: Option<usize>) -> Result<(usize, Vec<BasisFunction>)> {
    let root: Value = serde_json::from_str(text).map_err(|e| perr(format!("invalid JSON: {e}")))?;
    let (n_file, list) = match &root {
        Value::Array(list) => (None, list),
        Value::Object(obj) => {
            let n = match obj.get("n") {
                Some(v) => Some(v.as_u64().ok_or_else(|| perr("\"n\" must be a positive integer"))? as usize),
                None => None,
            };
            let list = obj
                .get("functions")
                .and_then(Value::as_array)
                .ok_or_else(|| perr("missing \"functions\" array"))?;
            (n, list)
        }
        _ => return Err(perr("basis file must be a list or {n, functions}")),
    };
    if let (Some(a), Some(b)) = (n_file, n_hint) {
        if a != b {
            return Err(Error::DimensionMismatch { expected: b, found: a });
        }
    }
    let mut n = n_file.or(n_hint);
    let mut functions = Vec::with_capacity(list.len());
    for item in list {
        let f = match item {
            Value::String(s) => {
                let n = n.ok_or_else(|| perr("shorthand functions need \"n\" in the file or on the command line"))?;
                BasisFunction::parse(n, s)?
            }
            Value::Array(terms) => term_list(terms, n)?,
            other => return Err(perr(format!("bad function {other}"))),
        };
        n.get_or_insert(f.n());
        functions.push(f);
    }
    let n = n.ok_or_else(|| perr("cannot infer n from an empty basis"))?;
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    if let Some(f) = functions.iter().find(|f| f.n() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.n(),
        });
    }
    Ok((n, functions))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn nodes_all_coordinate_forms() {
        let text = r#"{"n": 3, "points": [[[1, 2], 3, "7/4"], [0.25, "-1", [4, 2]]]}"#;
        let parsed = parse_nodes_json(text, None).unwrap();
        assert_eq!(parsed.n, 3);
        assert_eq!(parsed.points[0].coords(), &[q(1, 2), q(3, 1), q(7, 4)]);
        assert_eq!(parsed.points[1].coords(), &[q(1, 4), q(-1, 1), q(2, 1)]);
        assert!(parsed.snaps.is_empty());
    }

    #[test]
    fn nodes_snapping() {
        let tol = crate::rational::tolerance_from_f64(1e-6).unwrap();
        let text = r#"{"n": 2, "points": [["0.3333333", 0.6666667]]}"#;
        let parsed = parse_nodes_json(text, Some(&tol)).unwrap();
        assert_eq!(parsed.points[0].coords(), &[q(1, 3), q(2, 3)]);
        assert_eq!(parsed.snaps.len(), 2);
    }

    #[test]
    fn nodes_errors() {
        assert!(parse_nodes_json("{", None).is_err());
        assert!(parse_nodes_json(r#"{"n": 2}"#, None).is_err());
        assert!(parse_nodes_json(r#"{"n": 2, "points": [[1, 2, 3]]}"#, None).is_err());
        assert!(parse_nodes_json(r#"{"n": 1, "points": [[[1, 0]]]}"#, None).is_err());
        assert!(parse_nodes_json(r#"{"n": 1, "points": [[true]]}"#, None).is_err());
        assert_eq!(parse_nodes_json(r#"{"points": [[1, 2]]}"#, None).unwrap().n, 2);
    }

    #[test]
    fn nodes_round_trip() {
        let pts = vec![Point::new(vec![q(-3, 7), q(5, 1)])];
        let text = nodes_to_json(2, &pts).to_string();
        assert_eq!(text, r#"{"n":2,"points":[[[-3,7],[5,1]]]}"#);
        assert_eq!(parse_nodes_json(&text, None).unwrap().points, pts);
    }

    #[test]
    fn basis_forms() {
        let (n, fs) = parse_basis_json(r#"{"n": 3, "functions": ["x1^2", "x2^2"]}"#, None).unwrap();
        assert_eq!(n, 3);
        assert_eq!(fs[1], BasisFunction::monomial(vec![0, 2, 0]));

        let text = r#"[[{"exponents": [1, 0], "coeff": [3, 2]}, {"exponents": [0, 1], "coeff": -1}], [{"exponents": [0, 0]}]]"#;
        let (n, fs) = parse_basis_json(text, None).unwrap();
        assert_eq!(n, 2);
        assert_eq!(fs[0], BasisFunction::parse(2, "3/2*x1 - x2").unwrap());
        assert_eq!(fs[1].to_string(), "1");

        let (n, _) = parse_basis_json(r#"["x*y"]"#, Some(3)).unwrap();
        assert_eq!(n, 3);
        assert!(parse_basis_json(r#"["x*y"]"#, None).is_err());
        assert!(parse_basis_json(r#"{"n": 3, "functions": ["x"]}"#, Some(2)).is_err());
        assert!(parse_basis_json(r#"[[{"exponents": [1, 0]}], [{"exponents": [1]}]]"#, None).is_err());
        assert!(parse_basis_json("7", None).is_err());
    }
}
