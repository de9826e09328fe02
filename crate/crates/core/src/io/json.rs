//! JSON input documents and certificate emission.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use super::text::{format_poly, parse_system_polys, SystemDocument, FORMAT_VERSION};
use crate::diffpoly::{DiffPoly, GenericSystem, VarTable};
use crate::engine::{ResultantCertificate, VerificationReport};
use crate::error::{Error, Result};
use crate::order::Order;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateFormat {
    Text,
    Json,
}

fn json_err(msg: impl Into<String>) -> Error {
    Error::Parse { line: 1, col: 1, msg: msg.into() }
}

/// `{"version": 1, "main": [...], "polys": [...], "options": {...}}`; `main` is optional.
pub fn parse_document_json(text: &str) -> Result<SystemDocument> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), col: e.column(), msg: e.to_string() })?;
    let obj = value.as_object().ok_or_else(|| json_err("document must be an object"))?;
    let version = match obj.get("version") {
        None => FORMAT_VERSION,
        Some(v) => v.as_u64().ok_or_else(|| json_err("version must be an integer"))? as u32,
    };
    if version != FORMAT_VERSION {
        return Err(json_err(format!("unsupported version {version}")));
    }
    let strings = |key: &str| -> Result<Option<Vec<String>>> {
        match obj.get(key) {
            None => Ok(None),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| v.as_str().map(str::to_string).ok_or_else(|| json_err(format!("{key} must hold strings"))))
                .collect::<Result<Vec<_>>>()
                .map(Some),
            Some(_) => Err(json_err(format!("{key} must be an array"))),
        }
    };
    let main = strings("main")?;
    let polys = strings("polys")?.ok_or_else(|| json_err("missing polys"))?;
    let system = parse_system_polys(&polys, main)?;
    let mut options = BTreeMap::new();
    if let Some(opts) = obj.get("options") {
        let opts = opts.as_object().ok_or_else(|| json_err("options must be an object"))?;
        for (k, v) in opts {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            options.insert(k.clone(), v);
        }
    }
    Ok(SystemDocument { version, system, options })
}

fn int_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn order_value(o: Order) -> Value {
    match o {
        Order::NegInf => Value::Null,
        Order::Fin(v) => json!(v),
    }
}

/// `[[num, den, [[var, shift, exp], …]], …]` in the global monomial order.
pub fn poly_to_json(p: &DiffPoly, vars: &VarTable) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(c, m)| {
                let factors: Vec<Value> =
                    m.factors().iter().map(|&(sv, e)| json!([vars.name(sv.var()), sv.shift, e])).collect();
                json!([int_value(c.numer()), int_value(c.denom()), factors])
            })
            .collect(),
    )
}

fn verification_to_json(v: &VerificationReport) -> Value {
    let mut obj = Map::new();
    obj.insert("trials".into(), json!(v.trials));
    obj.insert("seed".into(), json!(v.seed));
    obj.insert("vanishing".into(), json!(v.vanishing));
    obj.insert("layers".into(), Value::Array(v.layers.iter().map(|l| l.as_ref().map_or(Value::Null, |l| json!(l))).collect()));
    if let Some(r) = v.representation {
        obj.insert("representation".into(), json!(r));
    }
    obj.insert("passed".into(), json!(v.passed()));
    Value::Object(obj)
}

pub fn certificate_to_json(cert: &ResultantCertificate, sys: &GenericSystem) -> Value {
    let mut obj = Map::new();
    obj.insert("resultant".into(), poly_to_json(&cert.resultant, sys.vars()));
    obj.insert("text".into(), json!(format_poly(&cert.resultant, sys.vars())));
    obj.insert("orders".into(), Value::Array(cert.orders.iter().map(|&o| order_value(o)).collect()));
    obj.insert("degree".into(), json!(cert.degree));
    if let Some(v) = &cert.verification {
        obj.insert("verification".into(), verification_to_json(v));
    }
    Value::Object(obj)
}

/// Byte-stable rendering. The text form puts the polynomial on the first line and
/// metadata on `#` lines, so the whole output parses back as the polynomial.
pub fn emit_certificate(cert: &ResultantCertificate, sys: &GenericSystem, format: CertificateFormat) -> String {
    match format {
        CertificateFormat::Json => {
            let mut s = serde_json::to_string_pretty(&certificate_to_json(cert, sys)).unwrap();
            s.push('\n');
            s
        }
        CertificateFormat::Text => {
            let orders: Vec<String> = cert.orders.iter().map(ToString::to_string).collect();
            let mut s = format!("{}\n# orders {}\n# degree {}\n", format_poly(&cert.resultant, sys.vars()), orders.join(" "), cert.degree);
            if let Some(v) = &cert.verification {
                let layers: Vec<String> = v
                    .layers
                    .iter()
                    .map(|l| match l {
                        Some(l) => format!("({})", l.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
                        None => "inhomogeneous".into(),
                    })
                    .collect();
                let vanished = v.vanishing.iter().filter(|&&x| x).count();
                s.push_str(&format!("# vanishing {vanished}/{} trials, seed {}\n", v.trials, v.seed));
                s.push_str(&format!("# layers {}\n", layers.join(" ")));
                s.push_str(&format!("# verification {}\n", if v.passed() { "passed" } else { "FAILED" }));
            }
            s
        }
    }
}
