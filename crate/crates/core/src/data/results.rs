// SPDX-License-Identifier: MIT OR Apache-2.0

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// SHA-256 of one input file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Everything one run produced. JSON objects serialize with sorted keys, so
/// identical inputs and seed give identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultsDocument {
    pub command: String,
    pub config: Value,
    pub metadata: BTreeMap<String, Value>,
    pub provenance: Vec<InputDigest>,
    pub results: Value,
}

impl ResultsDocument {
    pub fn new(command: impl Into<String>, config: Value) -> Self {
        ResultsDocument {
            command: command.into(),
            config,
            metadata: BTreeMap::new(),
            provenance: Vec::new(),
            results: Value::Null,
        }
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.metadata.insert(key.to_string(), value.into());
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        // Round-trip through Value so nested maps come out key-sorted.
        let value = serde_json::to_value(self)
            .map_err(|e| Error::Validation(format!("results encoding: {e}")))?;
        let mut bytes = serde_json::to_vec_pretty(&value)
            .map_err(|e| Error::Validation(format!("results encoding: {e}")))?;
        bytes.push(b'\n');
        Ok(bytes)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        serde_json::from_slice(bytes).map_err(|e| Error::Parse(format!("results document: {e}")))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::from_bytes(&fs::read(path).map_err(|e| Error::io(path, e))?)
    }

    /// Write through a temporary sibling and rename into place.
    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        write_atomic(path, &self.to_bytes()?)
    }
}

/// Write `bytes` to a temporary file next to `path`, then rename. A reader
/// never observes a partially written file.
pub fn write_atomic(path: impl AsRef<Path>, bytes: &[u8]) -> Result<()> {
    let path = path.as_ref();
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::Config(format!("output path {} has no file name", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(file_name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, bytes).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::io(path, e)
    })
}

pub fn file_digest(path: impl AsRef<Path>) -> Result<InputDigest> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(InputDigest {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted() {
        let mut doc = ResultsDocument::new("rsa", serde_json::json!({"z": 1, "a": 2}));
        doc.note("seed", 42);
        doc.results = serde_json::json!({"b": [1, 2], "a": {"y": 1.5, "x": null}});
        let text = String::from_utf8(doc.to_bytes().unwrap()).unwrap();
        let a = text.find("\"a\": 2").unwrap();
        let z = text.find("\"z\": 1").unwrap();
        assert!(a < z);
        assert_eq!(ResultsDocument::from_bytes(text.as_bytes()).unwrap(), doc);
    }

    #[test]
    fn atomic_write_leaves_no_temp_file() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("r.json");
        write_atomic(&out, b"{}").unwrap();
        let names: Vec<_> = fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        assert_eq!(names, vec![std::ffi::OsString::from("r.json")]);
    }
}
