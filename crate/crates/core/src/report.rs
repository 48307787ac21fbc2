//! Run reporting: machine output on stdout, provenance on stderr.
//!
//! Every run of the `orderly` binary writes exactly one compact JSON
//! document (plus a trailing newline) to stdout. Rerunning with the same
//! inputs reproduces it byte for byte, so anything timing-dependent lives
//! on stderr instead: a one-line human summary followed by the run
//! manifest — argv, tool version, configuration echo, a digest of every
//! input consumed, the outcome, and wall time.

use std::time::Instant;

use sha2::{Digest, Sha256};

/// Provenance of one run, accumulated while the command executes and
/// emitted to stderr at the end.
#[derive(Debug)]
pub struct RunManifest {
    command: Vec<String>,
    config: serde_json::Value,
    inputs: Vec<(String, String)>,
    outcome: String,
    started: Instant,
}

impl RunManifest {
    pub fn new(command: impl IntoIterator<Item = String>) -> RunManifest {
        RunManifest {
            command: command.into_iter().collect(),
            config: serde_json::Value::Null,
            inputs: Vec::new(),
            outcome: String::new(),
            started: Instant::now(),
        }
    }

    /// Echo the effective configuration (bounds, colorings, budgets).
    pub fn set_config(&mut self, config: serde_json::Value) {
        self.config = config;
    }

    /// Record one consumed input: `source` names where it came from (a file
    /// path, or `arg:--flag` for inline arguments), and the bytes are
    /// digested with SHA-256.
    pub fn record_input(&mut self, source: impl Into<String>, bytes: &[u8]) {
        let mut hasher = Sha256::new();
        hasher.update(bytes);
        let digest = hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect::<String>();
        self.inputs.push((source.into(), digest));
    }

    pub fn set_outcome(&mut self, outcome: impl Into<String>) {
        self.outcome = outcome.into();
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "config": self.config,
            "inputs": self
                .inputs
                .iter()
                .map(|(source, sha256)| serde_json::json!({"source": source, "sha256": sha256}))
                .collect::<Vec<_>>(),
            "outcome": self.outcome,
            "wall_ms": self.started.elapsed().as_millis() as u64,
        })
    }

    /// Write the human summary and the manifest to stderr.
    pub fn emit(&self, summary: &str) {
        eprintln!("{summary}");
        eprintln!("manifest: {}", self.to_json());
    }
}

/// Write one compact JSON document and a trailing newline to stdout.
pub fn emit_stdout(doc: &serde_json::Value) {
    println!("{doc}");
}
