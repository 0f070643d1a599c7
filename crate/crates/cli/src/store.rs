//! Content-addressed JSON report store.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Canonical bytes of a report: pretty JSON with sorted keys and a trailing
/// newline.
pub fn canonical_bytes(report: &Value) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(report).expect("reports serialize");
    bytes.push(b'\n');
    bytes
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes `report` under `dir` as `<sha256>.json`; existing files with the
/// same address are left untouched.
pub fn put(dir: &Path, report: &Value) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let bytes = canonical_bytes(report);
    let path = dir.join(format!("{}.json", digest(&bytes)));
    if !path.exists() {
        fs::write(&path, &bytes).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn same_report_same_address() {
        let dir = tempfile::tempdir().unwrap();
        let a = put(dir.path(), &json!({"b": 1, "a": [1, 2]})).unwrap();
        let b = put(dir.path(), &json!({"a": [1, 2], "b": 1})).unwrap();
        assert_eq!(a, b);
        let c = put(dir.path(), &json!({"a": [2, 1], "b": 1})).unwrap();
        assert_ne!(a, c);
    }
}
