use std::collections::BTreeMap;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::exactlin::format_scalar;
use crate::report::{AxiomReport, EmbeddingCertificate};

/// Canonical command report. Keys are kept sorted so both renderings are
/// byte-stable.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub pass: bool,
    pub fields: BTreeMap<String, Value>,
}

pub fn digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for (k, bytes) in inputs.iter().enumerate() {
        if k > 0 {
            h.update([0u8]);
        }
        h.update(bytes);
    }
    format!("sha256:{}", hex::encode(h.finalize()))
}

pub fn axioms_json(r: &AxiomReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "axiom": v.axiom,
                "witness": v.witness,
                "residual": v.residual.iter().map(format_scalar).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "checked": r.checked, "violations": violations, "pass": r.pass() })
}

pub fn certificate_json(c: &EmbeddingCertificate) -> Value {
    let relations: Vec<Value> = c
        .relations
        .iter()
        .map(|r| json!({ "relation": r.label, "zero": r.zero }))
        .collect();
    json!({
        "degree": c.degree,
        "max_length": c.max_length,
        "relations": relations,
        "kernel_dim": c.kernel_dim,
        "pass": c.pass,
    })
}

impl Report {
    pub fn new(command: impl Into<String>, input_digest: String) -> Self {
        Report {
            command: command.into(),
            input_digest,
            pass: false,
            fields: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.fields.insert(key.to_string(), value);
    }

    pub fn to_json(&self) -> String {
        let mut obj = serde_json::Map::new();
        obj.insert("command".into(), Value::String(self.command.clone()));
        obj.insert("input_digest".into(), Value::String(self.input_digest.clone()));
        obj.insert("pass".into(), Value::Bool(self.pass));
        for (k, v) in &self.fields {
            obj.insert(k.clone(), v.clone());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("json values serialize");
        s.push('\n');
        s
    }

    /// One `key: value` line per field, values in compact JSON.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "command: {}\ninput-digest: {}\npass: {}\n",
            self.command, self.input_digest, self.pass
        );
        for (k, v) in &self.fields {
            s.push_str(&format!("{k}: {v}\n"));
        }
        s
    }
}
