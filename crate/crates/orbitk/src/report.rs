//! Machine-readable run reports.

use orbitk_core::warning::Warning;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WarningJson {
    pub code: String,
    pub message: String,
}

impl From<&Warning> for WarningJson {
    fn from(w: &Warning) -> Self {
        Self {
            code: w.code.to_string(),
            message: w.message.clone(),
        }
    }
}

/// Everything a run produced. Contains no timestamps or paths beyond the
/// command echo, so identical invocations serialize identically.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub results: Value,
    pub warnings: Vec<WarningJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_status: i32,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// SHA-256 over the argument list and the contents of every input file, each
/// item length-prefixed.
#[derive(Clone, Debug, Default)]
pub struct InputDigest {
    hasher: Sha256,
}

impl InputDigest {
    pub fn new(args: &[String]) -> Self {
        let mut d = Self::default();
        for a in args {
            d.item(b"arg", a.as_bytes());
        }
        d
    }

    pub fn file(&mut self, name: &str, contents: &[u8]) {
        self.item(b"file", name.as_bytes());
        self.item(b"data", contents);
    }

    fn item(&mut self, tag: &[u8], bytes: &[u8]) {
        self.hasher.update(tag);
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn finish(self) -> String {
        format!("sha256:{}", hex::encode(self.hasher.finalize()))
    }
}
