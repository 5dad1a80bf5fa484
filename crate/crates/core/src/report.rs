//! Deterministic JSON reports (`"schema": "alexlab/1"`). Numbers are
//! exact: rationals are `"p/q"` strings, cyclotomic values coefficient
//! arrays with their conductor. Object keys are sorted.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::abelian::AbelianizationData;
use crate::extensions::{ActionMatrix, ExtensionReport};
use crate::modtools::{CharacterPoint, GradedDims, Ideal, ModulePresentation};
use crate::ring::{format_rational, CyclotomicElem, GroupAlgebraMatrix};

pub const SCHEMA: &str = "alexlab/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Adds `schema`, `version`, `command` and the canonical input to `body`.
pub fn envelope(command: &str, input: &str, body: Value) -> Value {
    let mut map = match body {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    map.insert("schema".into(), json!(SCHEMA));
    map.insert("version".into(), json!(VERSION));
    map.insert("command".into(), json!(command));
    map.insert("input".into(), json!(input));
    Value::Object(map)
}

/// Integers as JSON numbers when they fit in 64 bits, strings otherwise.
pub fn integer(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(x) => json!(x),
        Err(_) => json!(n.to_string()),
    }
}

pub fn rational(q: &BigRational) -> Value {
    json!(format_rational(q))
}

pub fn cyclotomic(e: &CyclotomicElem) -> Value {
    json!({"conductor": e.conductor, "coeffs": e.coeffs.iter().map(rational).collect::<Vec<_>>()})
}

pub fn point(chi: &CharacterPoint) -> Value {
    json!({
        "conductor": chi.conductor,
        "free": chi.free.iter().map(|v| v.coeffs.iter().map(rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "torsion": chi.torsion,
    })
}

pub fn dims(d: &GradedDims) -> Value {
    json!(d.dims)
}

pub fn abelianization(ab: &AbelianizationData) -> Value {
    json!({"rank": ab.free_rank, "torsion": ab.torsion_divisors.iter().map(integer).collect::<Vec<_>>()})
}

pub fn ideal(i: &Ideal) -> Value {
    json!({
        "ring": i.ring.describe(),
        "generators": i.format_generators(),
        "zero": i.is_zero(),
        "unit": i.is_unit(),
    })
}

pub fn module(m: &ModulePresentation) -> Value {
    json!({
        "ring": m.ring.describe(),
        "generators": m.generator_names,
        "relations": m.format_relations(),
    })
}

pub fn matrix(m: &GroupAlgebraMatrix) -> Value {
    json!({"ring": m.ring.describe(), "rows": m.nrows, "cols": m.ncols, "entries": m.format_entries()})
}

fn action_matrices(ms: &[ActionMatrix]) -> Value {
    json!(ms
        .iter()
        .map(|m| m.iter().map(|r| r.iter().map(integer).collect::<Vec<_>>()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

pub fn extension_report(r: &ExtensionReport) -> Value {
    let mut v = json!({
        "actions_int": action_matrices(&r.actions_int),
        "actions_rat": action_matrices(&r.actions_rat),
        "ab_exact_split": r.ab_exact_split,
        "abf_exact_split": r.abf_exact_split,
        "quotient_abelian": r.quotient_abelian,
        "theta_kernel": dims(&r.theta_kernel),
        "theta_group": dims(&r.theta_group),
        "verdict": r.verdict.as_str(),
        "failures": r.failures,
        "passed": r.passed(),
    });
    if let Some(mp) = &r.modp {
        v["modp"] = json!({
            "p": mp.p,
            "actions": action_matrices(&mp.actions),
            "p_exact_split": mp.exact_split,
            "theta_p_kernel": dims(&mp.theta_kernel),
            "theta_p_group": dims(&mp.theta_group),
            "verdict": mp.verdict.as_str(),
        });
    }
    v
}

/// Compact JSON text, one line.
pub fn to_json(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Two aligned columns `key  value`; nested objects use dotted keys.
pub fn to_table(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, rows);
                }
            }
            other => rows.push((prefix.to_string(), scalar_text(other))),
        }
    }
    let mut rows = Vec::new();
    walk("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter().map(|(k, x)| format!("{k:<width$}  {x}\n")).collect()
}
