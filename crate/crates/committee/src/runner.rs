//! Dispatch from (rule, algorithm) names to the solvers.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use committee_core::cc::{cc_algo_c, cc_algo_gm, cc_algo_p, cc_algo_p_delta, cc_algo_r, cc_ptas};
use committee_core::exact::brute_force_winners;
use committee_core::monroe::{algo_a, algo_ar, algo_b, algo_c, algo_gm, algo_r};
use committee_core::profiles::Model;
use committee_core::{ElectionRule, PreferenceProfile, ScoringFunction, SolutionReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleName {
    Monroe,
    Cc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgoName {
    A,
    B,
    C,
    Gm,
    P,
    R,
    Ar,
    Exact,
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("unknown {what} {value:?}")]
    Unknown { what: &'static str, value: String },
    #[error("algorithm {algo} is not available for rule {rule}")]
    Pairing { rule: RuleName, algo: AlgoName },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Solver(#[from] committee_core::Error),
}

impl RuleName {
    pub fn name(self) -> &'static str {
        match self {
            RuleName::Monroe => "monroe",
            RuleName::Cc => "cc",
        }
    }

    pub fn rule(self, k: usize) -> ElectionRule {
        match self {
            RuleName::Monroe => ElectionRule::monroe(k),
            RuleName::Cc => ElectionRule::chamberlin_courant(k),
        }
    }
}

impl AlgoName {
    pub fn name(self) -> &'static str {
        match self {
            AlgoName::A => "a",
            AlgoName::B => "b",
            AlgoName::C => "c",
            AlgoName::Gm => "gm",
            AlgoName::P => "p",
            AlgoName::R => "r",
            AlgoName::Ar => "ar",
            AlgoName::Exact => "exact",
        }
    }

    pub fn supports(self, rule: RuleName) -> bool {
        match self {
            AlgoName::A | AlgoName::B | AlgoName::Ar => rule == RuleName::Monroe,
            AlgoName::P => rule == RuleName::Cc,
            AlgoName::C | AlgoName::Gm | AlgoName::R | AlgoName::Exact => true,
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for AlgoName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleName {
    type Err = RunError;
    fn from_str(s: &str) -> Result<Self, RunError> {
        match s.to_ascii_lowercase().as_str() {
            "monroe" => Ok(RuleName::Monroe),
            "cc" | "chamberlin-courant" => Ok(RuleName::Cc),
            _ => Err(RunError::Unknown {
                what: "rule",
                value: s.into(),
            }),
        }
    }
}

impl FromStr for AlgoName {
    type Err = RunError;
    fn from_str(s: &str) -> Result<Self, RunError> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "a" => AlgoName::A,
            "b" => AlgoName::B,
            "c" => AlgoName::C,
            "gm" => AlgoName::Gm,
            "p" => AlgoName::P,
            "r" => AlgoName::R,
            "ar" => AlgoName::Ar,
            "exact" => AlgoName::Exact,
            _ => {
                return Err(RunError::Unknown {
                    what: "algorithm",
                    value: s.into(),
                })
            }
        })
    }
}

pub fn parse_model(s: &str) -> Result<Model, RunError> {
    match s.to_ascii_lowercase().as_str() {
        "ic" | "impartial-culture" => Ok(Model::ImpartialCulture),
        "urn" => Ok(Model::Urn),
        "mallows" | "mallows-mixture" => Ok(Model::MallowsMixture),
        _ => Err(RunError::Unknown {
            what: "model",
            value: s.into(),
        }),
    }
}

/// Parses `rule:algo`, e.g. `monroe:gm`.
pub fn parse_pair(s: &str) -> Result<(RuleName, AlgoName), RunError> {
    let (rule, algo) = s
        .split_once(':')
        .ok_or_else(|| RunError::Usage(format!("expected rule:algorithm, got {s:?}")))?;
    let (rule, algo): (RuleName, AlgoName) = (rule.trim().parse()?, algo.trim().parse()?);
    if !algo.supports(rule) {
        return Err(RunError::Pairing { rule, algo });
    }
    Ok((rule, algo))
}

/// Tuning knobs; each algorithm reads only its own.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgoParams {
    pub beam_width: usize,
    pub samples: usize,
    pub seed: u64,
    /// AR accuracy; for `cc p` selects the PTAS composition.
    pub epsilon: Option<f64>,
    pub lambda: f64,
    /// Coverage window override for `cc p`.
    pub window: Option<usize>,
    /// Relaxation share for `cc p`.
    pub delta: Option<f64>,
}

impl Default for AlgoParams {
    fn default() -> Self {
        Self {
            beam_width: 15,
            samples: 100,
            seed: 0,
            epsilon: None,
            lambda: 0.9,
            window: None,
            delta: None,
        }
    }
}

/// Runs one algorithm and records its wall time.
pub fn run(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    rule: RuleName,
    algo: AlgoName,
    k: usize,
    params: &AlgoParams,
) -> Result<SolutionReport, RunError> {
    if !algo.supports(rule) {
        return Err(RunError::Pairing { rule, algo });
    }
    let started = Instant::now();
    let mut report = match (rule, algo) {
        (_, AlgoName::Exact) => brute_force_winners(profile, psf, &rule.rule(k))?,
        (RuleName::Monroe, AlgoName::A) => algo_a(profile, psf, k)?,
        (RuleName::Monroe, AlgoName::B) => algo_b(profile, psf, k)?,
        (RuleName::Monroe, AlgoName::C) => algo_c(profile, psf, k, params.beam_width)?,
        (RuleName::Monroe, AlgoName::Gm) => algo_gm(profile, psf, k)?,
        (RuleName::Monroe, AlgoName::R) => algo_r(profile, psf, k, params.samples, params.seed)?,
        (RuleName::Monroe, AlgoName::Ar) => {
            let epsilon = params
                .epsilon
                .ok_or_else(|| RunError::Usage("monroe ar needs --epsilon".into()))?;
            algo_ar(profile, psf, k, epsilon, params.lambda, params.seed)?
        }
        (RuleName::Cc, AlgoName::C) => cc_algo_c(profile, psf, k, params.beam_width)?,
        (RuleName::Cc, AlgoName::Gm) => cc_algo_gm(profile, psf, k)?,
        (RuleName::Cc, AlgoName::R) => cc_algo_r(profile, psf, k, params.samples, params.seed)?,
        (RuleName::Cc, AlgoName::P) => match (params.epsilon, params.delta, params.window) {
            (Some(_), Some(_), _) => {
                return Err(RunError::Usage(
                    "--epsilon and --delta are exclusive".into(),
                ))
            }
            (Some(eps), None, _) => cc_ptas(profile, psf, k, eps)?,
            (None, Some(delta), _) => cc_algo_p_delta(profile, psf, k, delta)?,
            (None, None, window) => cc_algo_p(profile, psf, k, window)?,
        },
        _ => unreachable!("pairing checked above"),
    };
    report.wall_time = Some(started.elapsed());
    Ok(report)
}
