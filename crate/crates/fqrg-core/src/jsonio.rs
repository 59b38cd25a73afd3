//! JSON document formats for the domain objects.
//!
//! Tensors are emitted as nested 0/1 arrays in index order, with basis index
//! 0 the unit; every document carries a `schema` field.

use crate::algebra::AlgebraStructure;
use crate::calculus::Calculus;
use crate::error::CatalogError;
use crate::exterior::ExteriorData;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Flat tensor to nested arrays with the given dimensions.
pub fn nested(t: &[u8], dims: &[usize]) -> Value {
    fn build(t: &[u8], dims: &[usize], offset: usize) -> Value {
        if dims.len() == 1 {
            return Value::Array(
                (0..dims[0])
                    .map(|i| Value::from(t[offset + i] as u64))
                    .collect(),
            );
        }
        let stride: usize = dims[1..].iter().product();
        Value::Array(
            (0..dims[0])
                .map(|i| build(t, &dims[1..], offset + i * stride))
                .collect(),
        )
    }
    assert_eq!(t.len(), dims.iter().product::<usize>());
    build(t, dims, 0)
}

/// Nested arrays back to a flat tensor, checking the dimensions.
pub fn flatten(value: &Value, dims: &[usize]) -> Result<Vec<u8>, CatalogError> {
    fn walk(value: &Value, dims: &[usize], out: &mut Vec<u8>) -> Result<(), CatalogError> {
        let arr = value
            .as_array()
            .ok_or_else(|| CatalogError::Malformed("expected array".into()))?;
        if arr.len() != dims[0] {
            return Err(CatalogError::Malformed(format!(
                "expected {} entries, found {}",
                dims[0],
                arr.len()
            )));
        }
        if dims.len() == 1 {
            for v in arr {
                let bit = v
                    .as_u64()
                    .filter(|&b| b <= 1)
                    .ok_or_else(|| CatalogError::Malformed("entries must be 0 or 1".into()))?;
                out.push(bit as u8);
            }
            return Ok(());
        }
        for v in arr {
            walk(v, &dims[1..], out)?;
        }
        Ok(())
    }
    let mut out = Vec::with_capacity(dims.iter().product());
    walk(value, dims, &mut out)?;
    Ok(out)
}

/// `{"schema": 1, "n": ..., "V": ..., "label": ...}`
pub fn algebra_to_json(alg: &AlgebraStructure) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "n": alg.n,
        "V": nested(&alg.v, &[alg.n, alg.n, alg.n]),
        "label": alg.label,
    })
}

pub fn algebra_from_json(value: &Value) -> Result<AlgebraStructure, CatalogError> {
    let n = value
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| CatalogError::Malformed("missing n".into()))? as usize;
    let v = flatten(
        value
            .get("V")
            .ok_or_else(|| CatalogError::Malformed("missing V".into()))?,
        &[n, n, n],
    )?;
    let mut alg = AlgebraStructure::from_constants(n, v);
    if let Some(label) = value.get("label").and_then(Value::as_str) {
        alg = alg.with_label(label);
    }
    Ok(alg)
}

/// `{"schema": 1, "algebra": label, "m": ..., "a": ..., "d": ..., "exterior": ...}`
pub fn calculus_to_json(cal: &Calculus, ext: Option<&ExteriorData>) -> Value {
    let (n, m) = (cal.n(), cal.m);
    let exterior = match ext {
        None => Value::Null,
        Some(ExteriorData::Zero) => json!({"mode": "zero"}),
        Some(ExteriorData::Free1D { eps, tau }) => json!({
            "mode": "free1d",
            "eps": nested(eps, &[m, m, n]),
            "tau": nested(tau, &[m, n]),
        }),
    };
    json!({
        "schema": SCHEMA_VERSION,
        "algebra": cal.algebra.label,
        "m": m,
        "a": nested(&cal.a, &[m, n, n, m]),
        "d": nested(&cal.d, &[n, n, m]),
        "exterior": exterior,
    })
}

pub fn calculus_from_json(alg: &AlgebraStructure, value: &Value) -> Result<Calculus, CatalogError> {
    let n = alg.n;
    let m = value
        .get("m")
        .and_then(Value::as_u64)
        .ok_or_else(|| CatalogError::Malformed("missing m".into()))? as usize;
    let a = flatten(
        value
            .get("a")
            .ok_or_else(|| CatalogError::Malformed("missing a".into()))?,
        &[m, n, n, m],
    )?;
    let d = flatten(
        value
            .get("d")
            .ok_or_else(|| CatalogError::Malformed("missing d".into()))?,
        &[n, n, m],
    )?;
    Ok(Calculus::new(alg.clone(), m, a, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn algebra_round_trip() {
        let d = catalog::algebra_n3("D").unwrap();
        let doc = algebra_to_json(&d);
        assert_eq!(doc["schema"], 1);
        let back = algebra_from_json(&doc).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn calculus_round_trip() {
        let b = catalog::algebra_n3("B").unwrap();
        let cal = Calculus::universal(&b);
        let ext = catalog::exterior("B").unwrap();
        let doc = calculus_to_json(&cal, Some(&ext));
        let back = calculus_from_json(&b, &doc).unwrap();
        assert_eq!(back.a, cal.a);
        assert_eq!(back.d, cal.d);
        assert_eq!(doc["exterior"]["mode"], "free1d");
    }

    #[test]
    fn malformed_documents_are_errors() {
        assert!(algebra_from_json(&serde_json::json!({"n": 2})).is_err());
        assert!(flatten(&serde_json::json!([[0, 1], [1]]), &[2, 2]).is_err());
        assert!(flatten(&serde_json::json!([[0, 2], [1, 0]]), &[2, 2]).is_err());
    }
}
