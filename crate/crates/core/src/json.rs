//! JSON encodings of graphs, projects, behaviours, valuations, measure
//! tables and matrices.
//!
//! Rationals are `{"num": n, "den": d}`; each part is a JSON integer when it
//! fits in 64 bits and a decimal string otherwise.  A wager is a rational,
//! the string `"inf"`, or a rational with an extra `"logs"` list of
//! `{"coeff": q, "arg": q}` terms standing for `Σ coeff·ln(arg)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::cat::interpret::Valuation;
use crate::conduct::WitnessedBehaviour;
use crate::error::{Error, Result};
use crate::graph::{Edge, Vertex, WeightedGraph};
use crate::matrix::WeightMatrix;
use crate::measure::WeightTable;
use crate::project::{Project, SlicedGraph};
use crate::rational::parse_rational;
use crate::scalar::{ExtReal, Scalar};
use crate::Rational;

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}

/// Parses JSON text, reporting syntax errors with their position.
pub fn parse_value(src: &str) -> Result<Value> {
    serde_json::from_str(src).map_err(|e| Error::Parse {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })
}

fn bigint_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => json!(x),
        None => json!(n.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(x) => Ok(BigInt::from(x)),
            None => invalid(format!("not an integer: {n}")),
        },
        Value::String(s) => s.parse().or_else(|_| invalid(format!("not an integer: {s:?}"))),
        _ => invalid(format!("expected an integer, found {v}")),
    }
}

pub fn rational_to_json(r: &Rational) -> Value {
    json!({"num": bigint_to_json(r.numer()), "den": bigint_to_json(r.denom())})
}

/// Accepts `{"num","den"}`, a JSON integer, or a string `"n"` / `"n/d"`.
pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::Object(m) => {
            let num = bigint_from_json(m.get("num").ok_or(Error::Invalid("rational without num".into()))?)?;
            let den = bigint_from_json(m.get("den").ok_or(Error::Invalid("rational without den".into()))?)?;
            if den == BigInt::from(0) {
                return invalid("zero denominator");
            }
            Ok(Rational::new(num, den))
        }
        Value::Number(_) => Ok(Rational::from_integer(bigint_from_json(v)?)),
        Value::String(s) => parse_rational(s),
        _ => invalid(format!("expected a rational, found {v}")),
    }
}

pub fn ext_to_json(x: &ExtReal) -> Value {
    match x {
        ExtReal::Infinite => json!("inf"),
        ExtReal::Finite(s) => {
            let mut v = rational_to_json(s.rational_part());
            let logs: Vec<Value> = s
                .log_terms()
                .map(|(c, arg)| json!({"coeff": rational_to_json(c), "arg": rational_to_json(arg)}))
                .collect();
            if !logs.is_empty() {
                v["logs"] = Value::Array(logs);
            }
            v
        }
    }
}

pub fn ext_from_json(v: &Value) -> Result<ExtReal> {
    if v.as_str() == Some("inf") {
        return Ok(ExtReal::Infinite);
    }
    let mut s = Scalar::from_rational(rational_from_json(v)?);
    if let Some(logs) = v.get("logs") {
        let logs = logs.as_array().ok_or(Error::Invalid("logs must be a list".into()))?;
        for t in logs {
            let c = rational_from_json(t.get("coeff").unwrap_or(&Value::Null))?;
            let a = rational_from_json(t.get("arg").unwrap_or(&Value::Null))?;
            if !a.is_positive() {
                return invalid("logarithm argument must be positive");
            }
            s = &s + &Scalar::log_term(c, a);
        }
    }
    Ok(ExtReal::Finite(s))
}

fn vertices_to_json(vs: &BTreeSet<Vertex>) -> Value {
    Value::Array(vs.iter().map(|v| json!(v.0)).collect())
}

fn vertices_from_json(v: &Value) -> Result<BTreeSet<Vertex>> {
    let arr = v.as_array().ok_or(Error::Invalid("vertex list expected".into()))?;
    arr.iter()
        .map(|x| x.as_u64().map(Vertex).ok_or(Error::Invalid(format!("bad vertex {x}"))))
        .collect()
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| Error::Invalid(format!("missing field {name:?}")))
}

pub fn graph_to_json(g: &WeightedGraph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| json!({"src": e.src.0, "tgt": e.tgt.0, "w": rational_to_json(&e.weight)}))
        .collect();
    json!({"vertices": vertices_to_json(g.vertices()), "edges": edges})
}

pub fn graph_from_json(v: &Value) -> Result<WeightedGraph> {
    let vertices = vertices_from_json(field(v, "vertices")?)?;
    let edges = field(v, "edges")?
        .as_array()
        .ok_or(Error::Invalid("edges must be a list".into()))?
        .iter()
        .map(|e| {
            let end = |k: &str| {
                field(e, k)?
                    .as_u64()
                    .map(Vertex)
                    .ok_or_else(|| Error::Invalid(format!("bad {k} in {e}")))
            };
            Ok(Edge {
                src: end("src")?,
                tgt: end("tgt")?,
                weight: rational_from_json(field(e, "w")?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    WeightedGraph::new(vertices, edges)
}

/// Projects also record their carrier, which a project without slices
/// needs.
pub fn project_to_json(p: &Project) -> Value {
    let slices: Vec<Value> = p
        .body()
        .slices()
        .iter()
        .map(|(a, g)| json!({"coeff": rational_to_json(a), "graph": graph_to_json(g)}))
        .collect();
    json!({"wager": ext_to_json(p.wager()), "carrier": vertices_to_json(p.carrier()), "slices": slices})
}

pub fn project_from_json(v: &Value) -> Result<Project> {
    let wager = ext_from_json(field(v, "wager")?)?;
    let slices = field(v, "slices")?
        .as_array()
        .ok_or(Error::Invalid("slices must be a list".into()))?
        .iter()
        .map(|s| Ok((rational_from_json(field(s, "coeff")?)?, graph_from_json(field(s, "graph")?)?)))
        .collect::<Result<Vec<_>>>()?;
    let carrier = match (v.get("carrier"), slices.first()) {
        (Some(c), _) => vertices_from_json(c)?,
        (None, Some((_, g))) => g.vertices().clone(),
        (None, None) => return invalid("a project without slices needs a carrier"),
    };
    Ok(Project::new(wager, SlicedGraph::new(carrier, slices)?))
}

pub fn behaviour_to_json(b: &WitnessedBehaviour) -> Value {
    json!({
        "carrier": vertices_to_json(&b.carrier),
        "members": b.members.iter().map(project_to_json).collect::<Vec<_>>(),
        "copolar": b.copolar.iter().map(project_to_json).collect::<Vec<_>>(),
        "proper": b.proper,
    })
}

pub fn behaviour_from_json(v: &Value) -> Result<WitnessedBehaviour> {
    let list = |k: &str| -> Result<Vec<Project>> {
        field(v, k)?
            .as_array()
            .ok_or_else(|| Error::Invalid(format!("{k} must be a list")))?
            .iter()
            .map(project_from_json)
            .collect()
    };
    let proper = v.get("proper").and_then(Value::as_bool).unwrap_or(true);
    WitnessedBehaviour::new(vertices_from_json(field(v, "carrier")?)?, list("members")?, list("copolar")?, proper)
}

/// `{"X": behaviour, ...}`; unlisted atoms fall back to the default
/// template.
pub fn valuation_from_json(v: &Value) -> Result<Valuation> {
    let m = v.as_object().ok_or(Error::Invalid("valuation must be an object".into()))?;
    m.iter()
        .try_fold(Valuation::default(), |val, (name, b)| val.bind(name, behaviour_from_json(b)?))
}

pub fn valuation_to_json(val: &Valuation) -> Value {
    Value::Object(
        val.bindings()
            .iter()
            .map(|(k, b)| (k.clone(), behaviour_to_json(b)))
            .collect::<Map<_, _>>(),
    )
}

/// `{"n/d": value, ..., "*": default}` with values rationals or `"inf"`.
pub fn table_from_json(v: &Value) -> Result<WeightTable> {
    let m = v.as_object().ok_or(Error::Invalid("table must be an object".into()))?;
    let mut t = WeightTable::default();
    for (k, x) in m {
        let value = ext_from_json(x)?;
        if value.finite().is_some_and(|s| s.to_f64() < 0.0) {
            return invalid(format!("negative table value for {k}"));
        }
        if k == "*" {
            t.default = Some(value);
        } else {
            t.entries.insert(parse_rational(k)?, value);
        }
    }
    Ok(t)
}

pub fn table_to_json(t: &WeightTable) -> Value {
    let mut m: Map<String, Value> = t
        .entries
        .iter()
        .map(|(k, v)| (crate::rational::format_rational(k), ext_to_json(v)))
        .collect();
    if let Some(d) = &t.default {
        m.insert("*".into(), ext_to_json(d));
    }
    Value::Object(m)
}

/// `{"rows": [...], "cols": [...], "entries": [[[num, den], ...], ...]}`.
pub fn matrix_to_json(m: &WeightMatrix) -> Value {
    let entries: Vec<Value> = m
        .entries
        .iter()
        .map(|row| {
            Value::Array(
                row.iter()
                    .map(|x| json!([bigint_to_json(x.numer()), bigint_to_json(x.denom())]))
                    .collect(),
            )
        })
        .collect();
    json!({
        "rows": m.rows.iter().map(|v| v.0).collect::<Vec<_>>(),
        "cols": m.cols.iter().map(|v| v.0).collect::<Vec<_>>(),
        "entries": entries,
    })
}

pub fn matrix_from_json(v: &Value) -> Result<WeightMatrix> {
    let index = |k: &str| -> Result<Vec<Vertex>> {
        field(v, k)?
            .as_array()
            .ok_or_else(|| Error::Invalid(format!("{k} must be a list")))?
            .iter()
            .map(|x| x.as_u64().map(Vertex).ok_or(Error::Invalid(format!("bad index {x}"))))
            .collect()
    };
    let (rows, cols) = (index("rows")?, index("cols")?);
    let entries = field(v, "entries")?
        .as_array()
        .ok_or(Error::Invalid("entries must be a list".into()))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or(Error::Invalid("matrix row must be a list".into()))?
                .iter()
                .map(|x| match x.as_array().map(Vec::as_slice) {
                    Some([n, d]) => rational_from_json(&json!({"num": n, "den": d})),
                    _ => invalid(format!("bad matrix entry {x}")),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if entries.len() != rows.len() || entries.iter().any(|r| r.len() != cols.len()) {
        return invalid("matrix shape does not match its index");
    }
    Ok(WeightMatrix { rows, cols, entries })
}
