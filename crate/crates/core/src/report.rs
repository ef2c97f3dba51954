use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use crate::error::Result;
use crate::model::{Assignment, EvaluationReport, PreferenceProfile, ScoringFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Exact,
    MonroeA,
    MonroeB,
    MonroeC,
    MonroeGm,
    MonroeR,
    MonroeAr,
    CcC,
    CcGm,
    CcP,
    CcPDelta,
    CcPtas,
    CcR,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::MonroeA => "monroe-a",
            Algorithm::MonroeB => "monroe-b",
            Algorithm::MonroeC => "monroe-c",
            Algorithm::MonroeGm => "monroe-gm",
            Algorithm::MonroeR => "monroe-r",
            Algorithm::MonroeAr => "monroe-ar",
            Algorithm::CcC => "cc-c",
            Algorithm::CcGm => "cc-gm",
            Algorithm::CcP => "cc-p",
            Algorithm::CcPDelta => "cc-p-delta",
            Algorithm::CcPtas => "cc-ptas",
            Algorithm::CcR => "cc-r",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Satisfaction of the best `(1 - delta)` share of the voters.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaMetric {
    pub delta: f64,
    /// Coverage window used by the greedy pass.
    pub window: usize,
    pub value: i64,
    /// Guaranteed level `(1 + ln(delta)/K) * (m - 1)`.
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionReport {
    pub algorithm: Algorithm,
    /// Sorted committee.
    pub committee: Vec<usize>,
    pub assignment: Assignment,
    pub evaluation: EvaluationReport,
    /// Which internal route produced the result, when an algorithm has several.
    pub branch: Option<&'static str>,
    pub seed: Option<u64>,
    pub delta: Option<DeltaMetric>,
    /// Filled in by callers that measure it.
    pub wall_time: Option<Duration>,
}

impl SolutionReport {
    pub fn new(
        algorithm: Algorithm,
        profile: &PreferenceProfile,
        psf: &ScoringFunction,
        mut committee: Vec<usize>,
        assignment: Assignment,
    ) -> Result<Self> {
        committee.sort_unstable();
        committee.dedup();
        let evaluation = EvaluationReport::compute(profile, psf, &assignment)?;
        Ok(Self {
            algorithm,
            committee,
            assignment,
            evaluation,
            branch: None,
            seed: None,
            delta: None,
            wall_time: None,
        })
    }

    pub fn l1(&self) -> i64 {
        self.evaluation.l1
    }

    pub(crate) fn tagged(mut self, algorithm: Algorithm, branch: &'static str) -> Self {
        self.algorithm = algorithm;
        self.branch = Some(branch);
        self
    }

    pub(crate) fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Copy with the timing field cleared, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        Self {
            wall_time: None,
            ..self.clone()
        }
    }
}
