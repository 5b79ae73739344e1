//! Reproducibility manifest: what ran, with which parameters, when, and
//! which files it wrote. The parameter hash identifies a run; re-running
//! with the same parameters reproduces the outputs byte-exactly.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    /// Sorted key/value pairs of every effective parameter.
    pub parameters: Vec<(String, String)>,
    /// SHA-256 of the canonical `key=value` parameter lines.
    pub config_hash: String,
    pub tool_version: String,
    /// ISO-8601 timestamp of the run (not part of any output file).
    pub timestamp: String,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(subcommand: &str, mut parameters: Vec<(String, String)>) -> Self {
        parameters.sort();
        let canonical: String =
            parameters.iter().map(|(k, v)| format!("{k}={v}\n")).collect();
        let mut hasher = Sha256::new();
        hasher.update(subcommand.as_bytes());
        hasher.update(b"\n");
        hasher.update(canonical.as_bytes());
        let config_hash = format!("{:x}", hasher.finalize());
        Self {
            subcommand: subcommand.to_string(),
            parameters,
            config_hash,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
            outputs: Vec::new(),
        }
    }

    pub fn record_output(&mut self, path: &str) {
        self.outputs.push(path.to_string());
    }
}
