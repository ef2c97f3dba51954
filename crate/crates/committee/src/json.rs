//! JSON form of a solution report.

use num_rational::Ratio;
use serde::Serialize;

use committee_core::model::ratio_to_f64;
use committee_core::{PreferenceProfile, SolutionReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ExactRatio {
    pub numerator: i64,
    pub denominator: i64,
    pub value: f64,
}

impl From<&Ratio<i64>> for ExactRatio {
    fn from(r: &Ratio<i64>) -> Self {
        Self {
            numerator: *r.numer(),
            denominator: *r.denom(),
            value: ratio_to_f64(r),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DeltaOutput {
    pub delta: f64,
    pub window: usize,
    pub value: i64,
    pub bound: f64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SolveOutput {
    pub schema_version: u32,
    pub rule: String,
    pub algorithm: String,
    pub branch: Option<String>,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub seed: Option<u64>,
    pub committee: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub committee_names: Option<Vec<String>>,
    pub assignment: Vec<Option<usize>>,
    pub l1: i64,
    pub l_inf: i64,
    pub l_min: i64,
    pub ideal: i64,
    pub ratio_to_ideal: Option<ExactRatio>,
    pub c_opt: Option<i64>,
    pub ratio_to_opt: Option<ExactRatio>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_relaxed: Option<DeltaOutput>,
    /// Measured; excluded from reproducibility comparisons.
    pub wall_time_ms: Option<f64>,
}

impl SolveOutput {
    pub fn new(
        profile: &PreferenceProfile,
        rule: &str,
        k: usize,
        report: &SolutionReport,
        c_opt: Option<i64>,
    ) -> Self {
        let e = &report.evaluation;
        Self {
            schema_version: SCHEMA_VERSION,
            rule: rule.to_string(),
            algorithm: report.algorithm.name().to_string(),
            branch: report.branch.map(str::to_string),
            n: profile.num_voters(),
            m: profile.num_alternatives(),
            k,
            seed: report.seed,
            committee: report.committee.clone(),
            committee_names: profile
                .names()
                .map(|names| report.committee.iter().map(|&a| names[a].clone()).collect()),
            assignment: report.assignment.assigned.clone(),
            l1: e.l1,
            l_inf: e.l_inf,
            l_min: e.l_min,
            ideal: e.ideal,
            ratio_to_ideal: e.ratio_to_ideal.as_ref().map(ExactRatio::from),
            c_opt,
            ratio_to_opt: e.ratio_to_opt.as_ref().map(ExactRatio::from),
            delta_relaxed: report.delta.as_ref().map(|d| DeltaOutput {
                delta: d.delta,
                window: d.window,
                value: d.value,
                bound: d.bound,
            }),
            wall_time_ms: report.wall_time.map(|t| t.as_secs_f64() * 1e3),
        }
    }
}
