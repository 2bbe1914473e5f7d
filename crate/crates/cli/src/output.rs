use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Map, Value};

use fusion_core::grassmann::FrameJson;
use fusion_core::FrameConfig;

pub const TOOL: &str = "fusion";

/// Bad flags or unusable input; maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Run metadata embedded in every artifact.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub flags: Value,
    pub seed: Option<u64>,
}

/// What a command hands back to `main`.
pub struct Report {
    pub summary: Vec<String>,
    /// All requested certificates passed.
    pub passed: bool,
    pub result: Value,
}

impl Report {
    pub fn new(summary: Vec<String>, passed: bool, result: impl Serialize) -> Result<Self> {
        Ok(Report { summary, passed, result: serde_json::to_value(result)? })
    }
}

pub fn envelope(meta: &Meta, passed: bool, result: &Value) -> Value {
    json!({ "meta": meta, "passed": passed, "result": result })
}

pub fn to_pretty(v: &Value) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    fs::write(path, to_pretty(v)?).with_context(|| format!("writing {}", path.display()))
}

/// Write a data artifact with a `meta` entry next to its own fields. Readers
/// ignore the extra key, so artifacts re-ingest as plain data files.
pub fn write_artifact(path: &Path, meta: &Meta, data: impl Serialize) -> Result<()> {
    let mut obj = match serde_json::to_value(data)? {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("data".into(), other);
            m
        }
    };
    obj.insert("meta".into(), serde_json::to_value(meta)?);
    write_json(path, &Value::Object(obj))
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("reading {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: not valid JSON: {e}", path.display())))
}

pub fn read_frame(path: &Path) -> Result<FrameConfig> {
    let json: FrameJson = serde_json::from_value(read_json(path)?)
        .map_err(|e| usage(format!("{}: not a frame file: {e}", path.display())))?;
    Ok(FrameConfig::try_from(json)?)
}
