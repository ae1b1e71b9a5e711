//! File and JSON formats: the matrix text format, quiver JSON, group JSON,
//! K-theory report JSON and Witt vector JSON.

use std::str::FromStr;

use coxk_core::witt::parse_elem;
use coxk_core::{
    dsl, CheckResult, CoefficientRing, FinAbGroup, IntMatrix, KTheoryReport, PrimePower, Quiver, SmithDecomposition,
    WittVector,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
    #[error("matrix text: {0}")]
    Matrix(String),
}

impl FormatError {
    pub fn code(&self) -> &'static str {
        match self {
            FormatError::Json(_) => "BAD_JSON",
            FormatError::Schema(_) => "BAD_SCHEMA",
            FormatError::Matrix(_) => "BAD_MATRIX",
        }
    }
}

fn schema(msg: impl Into<String>) -> FormatError {
    FormatError::Schema(msg.into())
}

fn big_number(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("decimal integer"))
}

fn as_bigint(v: &Value, what: &str) -> Result<BigInt, FormatError> {
    match v {
        Value::Number(n) => {
            BigInt::from_str(&n.to_string()).map_err(|_| schema(format!("{what}: {n} is not an integer")))
        }
        _ => Err(schema(format!("{what}: expected an integer"))),
    }
}

fn as_u64(v: &Value, what: &str) -> Result<u64, FormatError> {
    v.as_u64().ok_or_else(|| schema(format!("{what}: expected a non-negative integer")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, FormatError> {
    obj.get(key).ok_or_else(|| schema(format!("missing field `{key}`")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, FormatError> {
    v.as_object().ok_or_else(|| schema(format!("{what}: expected an object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, FormatError> {
    v.as_array().ok_or_else(|| schema(format!("{what}: expected an array")))
}

// matrices

/// First line `rows cols`, then the entries row by row, separated by any
/// whitespace.
pub fn parse_matrix_text(text: &str) -> Result<IntMatrix, FormatError> {
    let mut tokens = text.split_whitespace();
    let mut dim = |name: &str| -> Result<usize, FormatError> {
        let t = tokens.next().ok_or_else(|| FormatError::Matrix(format!("missing {name}")))?;
        t.parse().map_err(|_| FormatError::Matrix(format!("{name} `{t}` is not a non-negative integer")))
    };
    let (rows, cols) = (dim("row count")?, dim("column count")?);
    let entries: Vec<BigInt> = tokens
        .map(|t| BigInt::from_str(t).map_err(|_| FormatError::Matrix(format!("entry `{t}` is not an integer"))))
        .collect::<Result<_, _>>()?;
    if entries.len() != rows * cols {
        return Err(FormatError::Matrix(format!(
            "expected {} entries for {rows}x{cols}, found {}",
            rows * cols,
            entries.len()
        )));
    }
    Ok(IntMatrix::from_entries(rows, cols, entries).expect("length checked"))
}

pub fn matrix_to_text(m: &IntMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for row in m.iter_rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(m.iter_rows().map(|r| Value::Array(r.iter().map(big_number).collect())).collect())
}

/// Rows of equal length; `[]` is the 0×0 matrix.
pub fn matrix_from_json(v: &Value) -> Result<IntMatrix, FormatError> {
    let rows = array(v, "matrix")?;
    let cols = rows.first().map(|r| array(r, "matrix row").map(Vec::len)).transpose()?.unwrap_or(0);
    let mut entries = Vec::with_capacity(rows.len() * cols);
    for r in rows {
        let r = array(r, "matrix row")?;
        if r.len() != cols {
            return Err(schema("matrix rows have different lengths"));
        }
        for x in r {
            entries.push(as_bigint(x, "matrix entry")?);
        }
    }
    Ok(IntMatrix::from_entries(rows.len(), cols, entries).expect("length checked"))
}

pub fn snf_to_json(s: &SmithDecomposition) -> Value {
    json!({
        "u": matrix_to_json(&s.u),
        "d": matrix_to_json(&s.d),
        "v": matrix_to_json(&s.v),
        "invariant_factors": s.invariant_factors.iter().map(big_number).collect::<Vec<_>>(),
    })
}

// quivers

pub fn quiver_to_json(q: &Quiver) -> Value {
    json!({
        "vertices": q.vertices(),
        "arrows": q.arrows().map(|(s, t)| json!([s, t])).collect::<Vec<_>>(),
    })
}

pub fn quiver_from_json(v: &Value) -> Result<Quiver, coxk_core::QuiverError> {
    let bad = |message: String| coxk_core::QuiverError::Parse { clause: 1, message };
    let obj = object(v, "quiver").map_err(|e| bad(e.to_string()))?;
    let vertices = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("quiver JSON needs a `vertices` array".into()))?
        .iter()
        .map(|x| as_u64(x, "vertex").map_err(|e| bad(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let arrows = obj
        .get("arrows")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("quiver JSON needs an `arrows` array".into()))?
        .iter()
        .map(|a| match a.as_array().map(Vec::as_slice) {
            Some([s, t]) => Ok((
                as_u64(s, "arrow").map_err(|e| bad(e.to_string()))?,
                as_u64(t, "arrow").map_err(|e| bad(e.to_string()))?,
            )),
            _ => Err(bad("each arrow must be a pair [source, target]".into())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Quiver::new(vertices, &arrows)
}

/// A quiver description in either the text syntax or the JSON form.
pub fn parse_quiver_source(text: &str) -> Result<Quiver, crate::CliError> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(FormatError::from)?;
        Ok(quiver_from_json(&v)?)
    } else {
        Ok(dsl::parse_quiver(text)?)
    }
}

// groups

pub fn group_to_json(g: &FinAbGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "torsion": g.torsion().iter().map(|d| big_number(&BigInt::from(d.clone()))).collect::<Vec<_>>(),
    })
}

pub fn group_from_json(v: &Value) -> Result<FinAbGroup, FormatError> {
    let obj = object(v, "group")?;
    let free = as_u64(field(obj, "free_rank")?, "free_rank")? as usize;
    let torsion = array(field(obj, "torsion")?, "torsion")?
        .iter()
        .map(|d| {
            as_bigint(d, "torsion")?
                .to_biguint()
                .filter(|d| *d >= BigUint::from(2u32))
                .ok_or_else(|| schema("torsion orders must be at least 2"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let g = FinAbGroup::from_cyclic_factors(free, torsion.iter().cloned());
    if g.torsion() != torsion.as_slice() {
        return Err(schema("torsion must be an increasing divisibility chain"));
    }
    Ok(g)
}

// reports

pub fn checks_to_json(checks: &[CheckResult]) -> Value {
    Value::Array(checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect())
}

pub fn report_to_json(r: &KTheoryReport, checks: &[CheckResult]) -> Value {
    json!({
        "quiver": quiver_to_json(&r.quiver),
        "m": r.m,
        "modulus": {"l": r.modulus.prime(), "nu": r.modulus.exponent()},
        "map": matrix_to_json(&r.map_matrix),
        "kernel": group_to_json(&r.kernel_group),
        "cokernel": group_to_json(&r.cokernel_group),
        "k_table": {
            "even": r.cokernel_group.to_string(),
            "odd": r.kernel_group.to_string(),
            "negative": "0",
        },
        "checks": checks_to_json(checks),
        "validity": r.validity(),
    })
}

/// Reads a report back. The `k_table` and `checks` entries are derived
/// data; the table is checked against the groups, the checks are ignored.
pub fn report_from_json(v: &Value) -> Result<KTheoryReport, crate::CliError> {
    let obj = object(v, "report")?;
    let quiver = quiver_from_json(field(obj, "quiver")?)?;
    let m = u32::try_from(as_u64(field(obj, "m")?, "m")?).map_err(|_| schema("m is too large"))?;
    let modulus = object(field(obj, "modulus")?, "modulus")?;
    let l = as_u64(field(modulus, "l")?, "l")?;
    let nu = u32::try_from(as_u64(field(modulus, "nu")?, "nu")?).map_err(|_| schema("nu is too large"))?;
    let modulus = PrimePower::new(l, nu)?;
    let map_matrix = matrix_from_json(field(obj, "map")?)?;
    let kernel_group = group_from_json(field(obj, "kernel")?)?;
    let cokernel_group = group_from_json(field(obj, "cokernel")?)?;
    let table = object(field(obj, "k_table")?, "k_table")?;
    let entry = |k: &str| field(table, k).ok().and_then(Value::as_str).map(str::to_owned);
    if entry("even") != Some(cokernel_group.to_string())
        || entry("odd") != Some(kernel_group.to_string())
        || entry("negative").as_deref() != Some("0")
    {
        return Err(schema("k_table does not match the kernel and cokernel").into());
    }
    Ok(KTheoryReport { quiver, m, modulus, map_matrix, kernel_group, cokernel_group })
}

// Witt vectors

pub fn elem_to_string(x: &BigRational) -> String {
    x.to_string()
}

pub fn witt_to_json(w: &WittVector) -> Value {
    json!({
        "ring": w.ring().to_string(),
        "trunc": w.trunc(),
        "coeffs": w.coeffs().iter().map(elem_to_string).collect::<Vec<_>>(),
    })
}

pub fn witt_from_json(v: &Value) -> Result<WittVector, crate::CliError> {
    let obj = object(v, "Witt vector")?;
    let ring: CoefficientRing =
        field(obj, "ring")?.as_str().ok_or_else(|| schema("ring: expected a string"))?.parse()?;
    let trunc = as_u64(field(obj, "trunc")?, "trunc")? as usize;
    let coeffs = array(field(obj, "coeffs")?, "coeffs")?
        .iter()
        .map(|c| {
            let s = c.as_str().ok_or_else(|| schema("coefficients are strings"))?;
            Ok(parse_elem(&ring, s)?)
        })
        .collect::<Result<Vec<_>, crate::CliError>>()?;
    if coeffs.len() != trunc {
        return Err(schema(format!("trunc is {trunc} but {} coefficients are given", coeffs.len())).into());
    }
    Ok(WittVector::new(ring, coeffs)?)
}
