//! Reports and their two renderings.
//!
//! The human rendering is produced from the JSON value tree, so both carry the same
//! numbers. Floats are written in shortest round-trip form.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::frames::BoundsReport;
use crate::lifting::EquivalenceReport;
use crate::weaving::{RieszReport, WeavingOptions, WeavingReport};

/// A named invariant: passes when `violation ≤ tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub violation: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, violation: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            passed: violation <= tolerance,
            violation,
            tolerance,
        }
    }

    /// A boolean expectation as a check: violation is 0 when it holds and 1 otherwise.
    pub fn flag(name: impl Into<String>, holds: bool) -> Self {
        Self::new(name, if holds { 0.0 } else { 1.0 }, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Bounds {
        #[serde(rename = "V")]
        v: BoundsReport,
        #[serde(rename = "W", default, skip_serializing_if = "Option::is_none")]
        w: Option<BoundsReport>,
    },
    Weave(WeavingReport),
    Riesz(RieszReport),
    Lift(EquivalenceReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub options: WeavingOptions,
    pub summary: String,
    pub exit_code: u8,
    pub result: Outcome,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_human(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = format!("{}: {}\n", self.command, self.summary);
        if let Value::Object(map) = &value {
            for (k, v) in map {
                if k != "command" && k != "summary" {
                    render(&mut out, k, v, 0);
                }
            }
        }
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "none".to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.to_string(),
            (_, Some(i)) => i.to_string(),
            _ => format!("{:?}", n.as_f64().expect("finite number")),
        },
        Value::String(s) => format!("{s:?}"),
        Value::Array(_) | Value::Object(_) => unreachable!("containers are rendered as blocks"),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) if map.is_empty() => {
            let _ = writeln!(out, "{pad}{key}: {{}}");
        }
        Value::Object(map) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, x) in map {
                render(out, k, x, depth + 1);
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let body: Vec<String> = items.iter().map(scalar).collect();
            let _ = writeln!(out, "{pad}{key}: [{}]", body.join(", "));
        }
        Value::Array(items) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, x) in items.iter().enumerate() {
                render(out, &format!("[{i}]"), x, depth + 1);
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{key}: {}", scalar(v));
        }
    }
}
