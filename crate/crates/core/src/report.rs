//! Run reports: the JSON document every solver command prints.
//!
//! Field order is fixed by the struct layout below. `duration_ms` is only
//! present when timing was requested, so two runs on the same input print
//! byte-identical reports by default.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::io::{serialize_compact, Instance};
use crate::model::{EdgeSolution, VertexSolution};
use crate::number::format_rational;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub report_version: u32,
    pub command: String,
    pub algorithm: String,
    pub parameters: BTreeMap<String, String>,
    pub instance_kind: String,
    pub instance_digest: String,
    /// `solved`, `infeasible`, `yes` or `no`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<ReportSolution>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Certificates>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSolution {
    /// `vertices`, `edges` or `items`.
    pub kind: String,
    pub selected: Vec<usize>,
    pub cost: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Certificates {
    pub feasible: bool,
    /// Covered profit (vertex cover) or covered vertex count (edge cover) per group.
    pub per_group: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lp_value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lp_lower_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coverage_bounds: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_cost: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
}

/// Hex SHA-256 of the compact serialisation.
pub fn instance_digest(instance: &Instance) -> String {
    hex::encode(Sha256::digest(serialize_compact(instance).as_bytes()))
}

impl RunReport {
    pub fn new(command: &str, algorithm: &str, instance: &Instance) -> Self {
        Self {
            report_version: REPORT_VERSION,
            command: command.to_string(),
            algorithm: algorithm.to_string(),
            parameters: BTreeMap::new(),
            instance_kind: instance.kind().to_string(),
            instance_digest: instance_digest(instance),
            status: "solved".to_string(),
            solution: None,
            certificates: None,
            duration_ms: None,
        }
    }

    pub fn parameter(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports always serialise");
        text.push('\n');
        text
    }
}

pub fn vertex_solution(solution: &VertexSolution) -> (ReportSolution, Certificates) {
    (
        ReportSolution {
            kind: "vertices".to_string(),
            selected: solution.selected.clone(),
            cost: format_rational(&solution.total_weight),
        },
        Certificates {
            feasible: solution.feasible,
            per_group: solution.per_group_profit.iter().map(format_rational).collect(),
            ..Certificates::default()
        },
    )
}

pub fn edge_solution(solution: &EdgeSolution) -> (ReportSolution, Certificates) {
    (
        ReportSolution {
            kind: "edges".to_string(),
            selected: solution.selected.clone(),
            cost: format_rational(&solution.total_cost),
        },
        Certificates {
            feasible: solution.feasible,
            per_group: solution.per_group_covered.iter().map(usize::to_string).collect(),
            ..Certificates::default()
        },
    )
}
