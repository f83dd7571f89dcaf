//! Bundled test matrices.

use serde_json::Value as Json;

use crate::error::{Error, Result};
use crate::matrix::RingMatrix;

pub const THREE_EXP_SUITE_JSON: &str = include_str!("../fixtures/three_exp_suite.json");
/// Cohn's matrix `[[1 + xy, x^2], [-y^2, 1 - xy]]` over a two-variable
/// polynomial ring, which is in `SL_2` but not elementary.
pub const COHN_JSON: &str = include_str!("../fixtures/cohn.json");

fn named(v: &Json) -> Result<(String, RingMatrix)> {
    let name = v.get("name").and_then(Json::as_str).unwrap_or_default().to_string();
    let m = v.get("matrix").ok_or_else(|| Error::parse("matrix", "missing"))?;
    Ok((name, RingMatrix::from_json(m)?))
}

/// Twenty polynomial `SL_2` matrices of degree at most 3.
pub fn three_exp_suite() -> Vec<(String, RingMatrix)> {
    let v: Json = serde_json::from_str(THREE_EXP_SUITE_JSON).expect("bundled suite is valid JSON");
    v.as_array()
        .expect("bundled suite is an array")
        .iter()
        .map(|e| named(e).expect("bundled suite parses"))
        .collect()
}

/// Parses the Cohn fixture; multivariable rings are rejected.
pub fn cohn_matrix() -> Result<RingMatrix> {
    let v: Json = serde_json::from_str(COHN_JSON).map_err(|e| Error::parse("cohn", e.to_string()))?;
    named(&v).map(|(_, m)| m)
}
