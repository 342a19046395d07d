//! Output rendering. JSON mode emits one compact object per run with
//! "schema":"1"; rationals are always {"num","den"} decimal strings so no
//! precision is lost. Integer counts render as JSON numbers while they fit
//! in u64 and fall back to decimal strings past that.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use puiseux_core::{Factorization, Rational, Semiring, SemiringClass};

pub fn rat(x: &Rational) -> Value {
    json!({
        "num": x.numer().to_string(),
        "den": x.denom().to_string(),
    })
}

pub fn big(b: &BigUint) -> Value {
    match u64::try_from(b) {
        Ok(v) => json!(v),
        Err(_) => json!(b.to_string()),
    }
}

pub fn big_opt(b: &Option<BigUint>) -> Value {
    match b {
        Some(v) => big(v),
        None => Value::Null,
    }
}

pub fn bigs(set: &BTreeSet<BigUint>) -> Value {
    Value::Array(set.iter().map(big).collect())
}

/// Digit map keyed by atom index, counts as decimal strings.
pub fn fac(z: &Factorization) -> Value {
    let mut m = Map::new();
    for (i, c) in z.iter() {
        m.insert(i.to_string(), json!(c.to_string()));
    }
    Value::Object(m)
}

/// Text form of a digit map: `{0:5, 1:2}`.
pub fn fac_text(z: &Factorization) -> String {
    format!("{z:?}")
}

pub fn class_name(c: SemiringClass) -> &'static str {
    match c {
        SemiringClass::Trivial => "trivial",
        SemiringClass::NonAtomic => "non-atomic",
        SemiringClass::AtomicBelowOne => "atomic-below-one",
        SemiringClass::AtomicAboveOne => "atomic-above-one",
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Comma-join a set of integers for text mode.
pub fn join_bigs(set: &BTreeSet<BigUint>) -> String {
    let parts: Vec<String> = set.iter().map(|b| b.to_string()).collect();
    parts.join(", ")
}

/// The common envelope around every JSON result.
pub fn envelope(command: &str, s: &Semiring, body: Map<String, Value>) -> String {
    let mut m = Map::new();
    m.insert("schema".into(), json!("1"));
    m.insert("command".into(), json!(command));
    m.insert("r".into(), rat(s.r()));
    m.insert("monoid".into(), json!(s.monoid().to_string()));
    for (k, v) in body {
        m.insert(k, v);
    }
    finish(Value::Object(m))
}

/// A structured domain error, same envelope fields where known.
pub fn error_object(command: &str, kind: &str, message: &str) -> String {
    finish(json!({
        "schema": "1",
        "command": command,
        "error": { "kind": kind, "message": message },
    }))
}

pub fn finish(v: Value) -> String {
    let mut out = serde_json::to_string(&v).expect("value serializes");
    out.push('\n');
    out
}
