//! Machine-readable reports.
//!
//! Everything except the trailing `runtime` object is deterministic for
//! fixed inputs and caps.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use mudeg_core::{DegreeCertificate, Permutation};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flagged => "FLAG",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub id: &'static str,
    pub anchor: &'static str,
    pub status: Status,
    pub summary: String,
    pub witness: Value,
    /// Reported in the `runtime` section, never inline.
    #[serde(skip)]
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Totals {
    pub passed: usize,
    pub failed: usize,
    pub flagged: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    pub checks: Vec<CheckReport>,
    pub totals: Totals,
    pub runtime: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            inputs: BTreeMap::new(),
            result: None,
            checks: Vec::new(),
            totals: Totals::default(),
            runtime: BTreeMap::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, check: CheckReport) {
        match check.status {
            Status::Pass => self.totals.passed += 1,
            Status::Fail => self.totals.failed += 1,
            Status::Flagged => self.totals.flagged += 1,
        }
        self.checks.push(check);
    }

    pub fn all_passed(&self) -> bool {
        self.totals.failed == 0
    }

    pub fn finish_timing(&mut self, wall_ms: f64) {
        self.runtime
            .insert("wall_ms".into(), json!(round_ms(wall_ms)));
        if !self.checks.is_empty() {
            let per: BTreeMap<&str, f64> = self
                .checks
                .iter()
                .map(|c| (c.id, round_ms(c.wall_ms)))
                .collect();
            self.runtime.insert("check_ms".into(), json!(per));
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn round_ms(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

pub fn cycles(perms: &[Permutation]) -> Vec<String> {
    perms.iter().map(ToString::to_string).collect()
}

pub fn certificate_json(c: &DegreeCertificate) -> Value {
    json!({
        "degree": c.degree,
        "faithful": c.faithful,
        "subgroups": c.entries.iter().map(|e| json!({
            "lattice_id": e.subgroup,
            "index": e.index,
            "core_order": e.core_order,
            "generators": cycles(&e.generators),
        })).collect::<Vec<_>>(),
        "action_generators": cycles(&c.action_generators),
    })
}

pub fn certificate_text(c: &DegreeCertificate) -> String {
    let mut out = format!(
        "certificate: {} subgroup(s), degree {}\n",
        c.entries.len(),
        c.degree
    );
    for (k, e) in c.entries.iter().enumerate() {
        let gens = if e.generators.is_empty() {
            "()".to_string()
        } else {
            cycles(&e.generators).join(", ")
        };
        out += &format!(
            "  [{}] index {}, core order {}, generators: {}\n",
            k + 1,
            e.index,
            e.core_order,
            gens
        );
    }
    out += "action generators:\n";
    for g in &c.action_generators {
        out += &format!("  {g}\n");
    }
    out += &format!("faithful: {}\n", c.faithful);
    out
}
