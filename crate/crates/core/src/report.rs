//! Report bundling: merges homology-v1 and verify-v1 reports into a single
//! table keyed by (model, n, q or L, statistic).

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{Error, Result};

/// One merged table row.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct BundleRow {
    pub model: String,
    pub n: String,
    pub q_or_l: String,
    pub statistic: String,
    pub betti: String,
    pub torsion: String,
    pub euler: String,
    pub coefficients: String,
    pub checked: String,
    pub violations: String,
}

/// Parses a list of report JSON payloads (with a name per payload used when
/// no meta is embedded) into sorted table rows. Inputs that are not reports
/// (sc-v1, poset-v1, lg-v1, unknown formats) are rejected.
pub fn bundle_reports(inputs: &[(String, String)]) -> Result<Vec<BundleRow>> {
    let mut rows = Vec::new();
    for (name, payload) in inputs {
        let value: Value = serde_json::from_str(payload)
            .map_err(|e| Error::InvalidInput(format!("{name}: not JSON ({e})")))?;
        let format = value
            .get("format")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidInput(format!("{name}: missing format tag")))?;
        match format {
            "homology-v1" => rows.push(homology_row(name, &value)?),
            "verify-v1" => rows.push(verify_row(name, &value)?),
            other => {
                return Err(Error::InvalidInput(format!(
                    "{name}: format {other:?} is not a report (expected homology-v1 or verify-v1)"
                )))
            }
        }
    }
    rows.sort_by(|a, b| {
        (&a.model, &a.n, &a.q_or_l, &a.statistic).cmp(&(&b.model, &b.n, &b.q_or_l, &b.statistic))
    });
    Ok(rows)
}

fn meta_fields(name: &str, value: &Value) -> (String, String, String) {
    let meta = value.get("meta");
    let model = meta
        .and_then(|m| m.get("model"))
        .and_then(Value::as_str)
        .unwrap_or(name)
        .to_string();
    let n = meta
        .and_then(|m| m.get("n"))
        .map(Value::to_string)
        .unwrap_or_default();
    let q_or_l = meta
        .and_then(|m| m.get("q").or_else(|| m.get("L")))
        .map(Value::to_string)
        .unwrap_or_default();
    (model, n, q_or_l)
}

fn homology_row(name: &str, value: &Value) -> Result<BundleRow> {
    let (model, n, q_or_l) = meta_fields(name, value);
    let betti = value
        .get("betti")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput(format!("{name}: missing betti")))?
        .iter()
        .map(Value::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    let torsion = value
        .get("torsion")
        .and_then(Value::as_array)
        .map(|dims| {
            let parts: Vec<String> = dims
                .iter()
                .enumerate()
                .filter_map(|(d, t)| {
                    let factors = t.as_array()?;
                    if factors.is_empty() {
                        None
                    } else {
                        let fs: Vec<String> =
                            factors.iter().map(Value::to_string).collect();
                        Some(format!("H{d}:{}", fs.join("*")))
                    }
                })
                .collect();
            if parts.is_empty() {
                "-".to_string()
            } else {
                parts.join(";")
            }
        })
        .unwrap_or_else(|| "-".into());
    Ok(BundleRow {
        model,
        n,
        q_or_l,
        statistic: "homology".into(),
        betti,
        torsion,
        euler: value.get("euler").map(Value::to_string).unwrap_or_default(),
        coefficients: value
            .get("coefficients")
            .and_then(Value::as_str)
            .unwrap_or_default()
            .to_string(),
        checked: String::new(),
        violations: String::new(),
    })
}

fn verify_row(name: &str, value: &Value) -> Result<BundleRow> {
    let (model, mut n, q_or_l) = meta_fields(name, value);
    if n.is_empty() {
        n = value.get("n").map(Value::to_string).unwrap_or_default();
    }
    let check = value
        .get("check")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::InvalidInput(format!("{name}: missing check name")))?;
    let violations = value
        .get("violations")
        .and_then(Value::as_array)
        .map(|v| v.len().to_string())
        .unwrap_or_default();
    Ok(BundleRow {
        model,
        n,
        q_or_l,
        statistic: check.to_string(),
        betti: String::new(),
        torsion: String::new(),
        euler: String::new(),
        coefficients: String::new(),
        checked: value.get("checked").map(Value::to_string).unwrap_or_default(),
        violations,
    })
}

/// CSV rendering of bundle rows, header included.
pub fn rows_to_csv(rows: &[BundleRow]) -> String {
    let mut out = String::from(
        "model,n,q_or_l,statistic,betti,torsion,euler,coefficients,checked,violations\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            csv_quote(&r.model),
            r.n,
            r.q_or_l,
            r.statistic,
            csv_quote(&r.betti),
            csv_quote(&r.torsion),
            r.euler,
            r.coefficients,
            r.checked,
            r.violations
        ));
    }
    out
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
