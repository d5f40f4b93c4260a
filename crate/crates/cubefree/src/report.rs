//! Machine-readable run records emitted by the command-line interface.

use serde::{Deserialize, Serialize};

/// One record per command invocation; serializes to a single JSON object and
/// parses back losslessly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub parameters: serde_json::Value,
    pub result: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub node_count: Option<u64>,
    pub version: String,
}

impl RunRecord {
    pub fn new(command: &str, parameters: serde_json::Value, result: serde_json::Value) -> Self {
        RunRecord {
            command: command.to_string(),
            parameters,
            result,
            wall_time_ms: None,
            node_count: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record is always serializable")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
