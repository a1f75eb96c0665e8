use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// One command's machine-readable result.
///
/// `serde_json` maps are ordered, so keys serialize sorted and repeated
/// runs produce identical bytes. Big integers and rationals are strings.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub result: Value,
}

impl OutputRecord {
    pub fn new(command: &str, result: Value) -> Self {
        OutputRecord {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            result,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records are always serializable");
        s.push('\n');
        s
    }
}
