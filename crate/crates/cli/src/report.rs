//! The structured report every subcommand emits.
//!
//! The JSON form is canonical: field order is fixed and apart from
//! `elapsed_ms` it depends only on the command line.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Ran, and the outcome agrees with the construction's claims.
    Consistent,
    /// Ran, and found a violation, counterexample or separating map.
    Counterexample,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Consistent => 0,
            Status::Counterexample => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub parameters: Value,
    pub status: Status,
    pub outcome: String,
    pub counters: BTreeMap<String, u64>,
    pub witnesses: Value,
    pub elapsed_ms: f64,
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with the timing field zeroed, for golden comparisons.
    pub fn deterministic(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["elapsed_ms"] = Value::from(0.0);
        v
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn human_summary(&self) -> String {
        let mut out = format!(
            "{}: {} ({:?}, {:.1} ms)\n",
            self.command, self.outcome, self.status, self.elapsed_ms
        );
        for (k, v) in &self.counters {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        for line in &self.summary {
            out.push_str("  ");
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub root: String,
    pub exponent: u32,
    pub power: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub n: usize,
    /// Witness over the subgroup generators `a = xYXyx`, `b = y`.
    pub witness_ab: String,
    pub witness_xy: String,
    pub length_ab: usize,
    pub length_xy: usize,
    /// Weight of `witness_xy⁻¹·x`, e.g. `">=5"`.
    pub discrepancy_weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomRecord {
    /// Row-major entries of each generator image (a single residue for cyclic groups).
    pub images: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetRecord {
    pub group: String,
    pub order: u64,
    pub homs_total: u64,
    pub homs_separating: u64,
    pub first_separating: Option<HomRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationRecord {
    pub degree: usize,
    pub basepoint: usize,
    pub endpoint: usize,
    /// `images[g][i]` is the image of point `i` under generator `g`.
    pub images: Vec<Vec<usize>>,
}
