//! JSON reports printed by `--json`. Non-finite numbers are written as `null`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use twrc_core::{PhaseMiTable, RegionLabel, SchemeMetrics};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WirelineReport {
    pub scheme: String,
    pub steps: usize,
    pub delivered_bits: usize,
    pub link_uses: usize,
    pub activations: usize,
    pub bps: f64,
    pub lpb: f64,
    pub npb: f64,
}

impl WirelineReport {
    pub fn new(scheme: &str, m: &SchemeMetrics) -> Self {
        Self {
            scheme: scheme.into(),
            steps: m.steps,
            delivered_bits: m.delivered_bits,
            link_uses: m.link_uses,
            activations: m.activations,
            bps: m.bps,
            lpb: m.lpb,
            npb: m.npb,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AllocationReport {
    /// `df`, `ub` or `twc`.
    pub bound: String,
    /// `srmax`, `wsrmax`, `maxmin` or `tcmin`.
    pub objective: String,
    /// `optimal` or `infeasible`.
    pub status: String,
    pub beta: f64,
    pub gamma: f64,
    pub tau: Option<[f64; 6]>,
    pub r13: Option<f64>,
    pub r31: Option<f64>,
    /// Objective value: a rate for the maximizations, a cost for `tcmin`.
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowReport {
    /// `R13`, `R31` or `R13+R31`.
    pub kind: String,
    pub coeffs: [f64; 6],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapsReport {
    pub r13: Option<f64>,
    pub r31: Option<f64>,
    pub sum: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub bound: String,
    pub beta: f64,
    pub gamma: f64,
    pub mi: BTreeMap<String, f64>,
    pub rows: Vec<RowReport>,
    pub tau: Option<[f64; 6]>,
    pub caps: Option<CapsReport>,
    /// Corners of the rate polygon at `tau`, counter-clockwise from the origin.
    pub vertices: Option<Vec<[f64; 2]>>,
}

pub fn mi_map(t: &PhaseMiTable) -> BTreeMap<String, f64> {
    t.entries().iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

pub fn bound_name(l: RegionLabel) -> &'static str {
    match l {
        RegionLabel::Outer => "ub",
        RegionLabel::InnerDf => "df",
        RegionLabel::Twc => "twc",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub cells: usize,
    pub ok: usize,
    pub errors: usize,
    pub max_df_over_twc: Option<f64>,
    pub output: String,
}

pub fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}
