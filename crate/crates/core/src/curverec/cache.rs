//! On-disk correlator cache keyed by `(version, N, g, n, M)`. Unreadable
//! entries are recomputed.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::exactmath::{parse_rational, to_exact_string, NumberField};

use super::engine::{Correlator, Key};
use super::CurveError;

pub(crate) fn path(dir: &Path, tag: &str, n: u32, g: u32, k: u32, order: u32) -> PathBuf {
    dir.join(format!(
        "omega_{tag}_v{}_N{n}_g{g}_n{k}_M{order}.json",
        env!("CARGO_PKG_VERSION")
    ))
}

pub(crate) fn store(p: &Path, c: &Correlator, n: u32, order: u32) -> Result<(), CurveError> {
    let entries: Vec<Value> = c
        .entries
        .iter()
        .map(|(k, v)| {
            let coeffs: Vec<String> = v.coeffs().iter().map(to_exact_string).collect();
            json!([k, coeffs])
        })
        .collect();
    let doc = json!({"N": n, "g": c.g, "n": c.n, "M": order, "entries": entries});
    if let Some(dir) = p.parent() {
        std::fs::create_dir_all(dir).map_err(|e| CurveError::Cache(e.to_string()))?;
    }
    let tmp = p.with_extension("tmp");
    std::fs::write(&tmp, doc.to_string()).map_err(|e| CurveError::Cache(e.to_string()))?;
    std::fs::rename(&tmp, p).map_err(|e| CurveError::Cache(e.to_string()))
}

pub(crate) fn load(p: &Path, field: &Arc<NumberField>, g: u32, n: u32) -> Result<Option<Correlator>, CurveError> {
    let Ok(text) = std::fs::read_to_string(p) else {
        return Ok(None);
    };
    let bad = |m: &str| CurveError::Cache(format!("{}: {m}", p.display()));
    let doc: Value = serde_json::from_str(&text).map_err(|e| bad(&e.to_string()))?;
    let mut entries = BTreeMap::new();
    for e in doc["entries"].as_array().ok_or_else(|| bad("missing entries"))? {
        let keys: Vec<Key> = serde_json::from_value(e[0].clone()).map_err(|e| bad(&e.to_string()))?;
        let coeffs = e[1]
            .as_array()
            .ok_or_else(|| bad("missing coefficients"))?
            .iter()
            .map(|c| {
                c.as_str()
                    .ok_or_else(|| bad("coefficient is not a string"))
                    .and_then(|s| parse_rational(s).map_err(|e| bad(&e.to_string())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() != field.degree() || keys.len() != n as usize {
            return Err(bad("shape mismatch"));
        }
        entries.insert(keys, field.from_poly(&coeffs));
    }
    Ok(Some(Correlator { g, n, entries }))
}
