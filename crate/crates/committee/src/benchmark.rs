//! Repeated runs on generated instances, reported as CSV.
//!
//! Repetition `r` draws its instance from `derive_seed(seed, r)`, so the
//! output does not depend on how repetitions are scheduled.

use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use committee_core::exact::{brute_force_with_budget, DEFAULT_BUDGET};
use committee_core::model::ratio_to_f64;
use committee_core::profiles::{generate, GeneratorConfig, Model};
use committee_core::rng::derive_seed;
use committee_core::ScoringFunction;

use crate::runner::{run, AlgoName, AlgoParams, RuleName, RunError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CommitteeSize {
    Fixed(usize),
    /// `K = round(fraction * m)`, at least 1.
    Fraction(f64),
}

impl CommitteeSize {
    pub fn resolve(self, m: usize) -> usize {
        match self {
            CommitteeSize::Fixed(k) => k,
            CommitteeSize::Fraction(f) => ((f * m as f64).round() as usize).max(1),
        }
    }
}

impl FromStr for CommitteeSize {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.contains('.') {
            let f: f64 = s
                .parse()
                .map_err(|_| format!("bad committee fraction {s:?}"))?;
            if !(f > 0.0 && f <= 1.0) {
                return Err(format!("committee fraction {f} outside (0, 1]"));
            }
            Ok(CommitteeSize::Fraction(f))
        } else {
            s.parse()
                .map(CommitteeSize::Fixed)
                .map_err(|_| format!("bad committee size {s:?}"))
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchmarkSpec {
    pub model: Model,
    pub n: usize,
    pub m: usize,
    pub k: CommitteeSize,
    pub runs: Vec<(RuleName, AlgoName)>,
    pub repetitions: usize,
    /// Known top positions per sweep step; empty means full ballots only.
    pub truncation: Vec<usize>,
    pub seed: u64,
    pub with_opt: bool,
    pub opt_budget: u128,
    pub params: AlgoParams,
    pub urn_ratio: f64,
    pub mixture_components: usize,
}

impl BenchmarkSpec {
    pub fn new(model: Model, n: usize, m: usize, k: CommitteeSize) -> Self {
        Self {
            model,
            n,
            m,
            k,
            runs: Vec::new(),
            repetitions: 1,
            truncation: Vec::new(),
            seed: 0,
            with_opt: false,
            opt_budget: DEFAULT_BUDGET,
            params: AlgoParams::default(),
            urn_ratio: committee_core::profiles::DEFAULT_URN_RATIO,
            mixture_components: committee_core::profiles::DEFAULT_MIXTURE_COMPONENTS,
        }
    }

    fn depths(&self) -> Vec<usize> {
        if self.truncation.is_empty() {
            vec![self.m]
        } else {
            self.truncation.clone()
        }
    }
}

/// One CSV line; `kind` is `instance` or `summary`.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Record {
    pub kind: &'static str,
    pub repetition: Option<usize>,
    pub instance_seed: Option<u64>,
    pub model: &'static str,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub depth: usize,
    pub rule: &'static str,
    pub algorithm: &'static str,
    pub branch: Option<&'static str>,
    pub l1: Option<i64>,
    pub ideal: Option<i64>,
    pub c_opt: Option<i64>,
    pub ratio_to_opt: Option<f64>,
    pub ratio_to_ideal: Option<f64>,
    pub count: Option<usize>,
    pub mean_ratio_to_opt: Option<f64>,
    pub std_ratio_to_opt: Option<f64>,
    pub mean_ratio_to_ideal: Option<f64>,
    pub std_ratio_to_ideal: Option<f64>,
    /// Measured; excluded from reproducibility comparisons.
    pub wall_time_ms: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("repetition {repetition}: {source}")]
    Run { repetition: usize, source: RunError },
    #[error("{0}")]
    Spec(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkOutput {
    pub instances: Vec<Record>,
    pub summaries: Vec<Record>,
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn one_repetition(spec: &BenchmarkSpec, k: usize, rep: usize) -> Result<Vec<Record>, RunError> {
    let instance_seed = derive_seed(spec.seed, rep as u64);
    let mut config = GeneratorConfig::new(spec.model, spec.n, spec.m, instance_seed);
    config.urn_alpha_ratio = spec.urn_ratio;
    config.mixture_components = spec.mixture_components;
    let full = generate(&config)?;
    let mut out = Vec::new();
    for depth in spec.depths() {
        let profile = if depth < spec.m {
            full.truncate(depth)?
        } else {
            full.clone()
        };
        let psf = ScoringFunction::truncated(spec.m, depth)?;
        let mut opt_cache: Vec<(RuleName, i64)> = Vec::new();
        for (i, &(rule, algo)) in spec.runs.iter().enumerate() {
            let c_opt = if spec.with_opt {
                match opt_cache.iter().find(|(r, _)| *r == rule) {
                    Some(&(_, v)) => Some(v),
                    None => {
                        let v = brute_force_with_budget(
                            &profile,
                            &psf,
                            &rule.rule(k),
                            spec.opt_budget,
                            "oracle",
                        )?
                        .l1();
                        opt_cache.push((rule, v));
                        Some(v)
                    }
                }
            } else {
                None
            };
            let params = AlgoParams {
                seed: derive_seed(instance_seed, 1 + i as u64),
                ..spec.params.clone()
            };
            let mut report = run(&profile, &psf, rule, algo, k, &params)?;
            if let Some(c) = c_opt {
                report.evaluation.set_opt(c);
            }
            let e = &report.evaluation;
            out.push(Record {
                kind: "instance",
                repetition: Some(rep),
                instance_seed: Some(instance_seed),
                model: spec.model.name(),
                n: spec.n,
                m: spec.m,
                k,
                depth,
                rule: rule.name(),
                algorithm: algo.name(),
                branch: report.branch,
                l1: Some(e.l1),
                ideal: Some(e.ideal),
                c_opt,
                ratio_to_opt: e.ratio_to_opt.as_ref().map(ratio_to_f64),
                ratio_to_ideal: e.ratio_to_ideal.as_ref().map(ratio_to_f64),
                count: None,
                mean_ratio_to_opt: None,
                std_ratio_to_opt: None,
                mean_ratio_to_ideal: None,
                std_ratio_to_ideal: None,
                wall_time_ms: report.wall_time.map_or(0.0, |t| t.as_secs_f64() * 1e3),
            });
        }
    }
    Ok(out)
}

pub fn run_benchmark(spec: &BenchmarkSpec) -> Result<BenchmarkOutput, BenchError> {
    if spec.repetitions == 0 {
        return Err(BenchError::Spec("repetitions must be at least 1".into()));
    }
    if spec.runs.is_empty() {
        return Err(BenchError::Spec("no algorithms requested".into()));
    }
    let k = spec.k.resolve(spec.m);
    if let Some(&d) = spec.depths().iter().find(|&&d| d == 0 || d > spec.m) {
        return Err(BenchError::Spec(format!(
            "truncation depth {d} outside 1..={}",
            spec.m
        )));
    }
    let per_rep: Vec<Vec<Record>> = (0..spec.repetitions)
        .into_par_iter()
        .map(|rep| {
            one_repetition(spec, k, rep).map_err(|source| BenchError::Run {
                repetition: rep,
                source,
            })
        })
        .collect::<Result<_, _>>()?;
    let instances: Vec<Record> = per_rep.into_iter().flatten().collect();

    let mut summaries = Vec::new();
    for depth in spec.depths() {
        for &(rule, algo) in &spec.runs {
            let group: Vec<&Record> = instances
                .iter()
                .filter(|r| r.depth == depth && r.rule == rule.name() && r.algorithm == algo.name())
                .collect();
            let opt: Vec<f64> = group.iter().filter_map(|r| r.ratio_to_opt).collect();
            let ideal: Vec<f64> = group.iter().filter_map(|r| r.ratio_to_ideal).collect();
            let (mean_opt, std_opt) = if opt.is_empty() {
                (None, None)
            } else {
                let (a, b) = mean_std(&opt);
                (Some(a), Some(b))
            };
            let (mean_ideal, std_ideal) = if ideal.is_empty() {
                (None, None)
            } else {
                let (a, b) = mean_std(&ideal);
                (Some(a), Some(b))
            };
            let time =
                group.iter().map(|r| r.wall_time_ms).sum::<f64>() / group.len().max(1) as f64;
            summaries.push(Record {
                kind: "summary",
                repetition: None,
                instance_seed: None,
                model: spec.model.name(),
                n: spec.n,
                m: spec.m,
                k,
                depth,
                rule: rule.name(),
                algorithm: algo.name(),
                branch: None,
                l1: None,
                ideal: None,
                c_opt: None,
                ratio_to_opt: None,
                ratio_to_ideal: None,
                count: Some(group.len()),
                mean_ratio_to_opt: mean_opt,
                std_ratio_to_opt: std_opt,
                mean_ratio_to_ideal: mean_ideal,
                std_ratio_to_ideal: std_ideal,
                wall_time_ms: time,
            });
        }
    }
    Ok(BenchmarkOutput {
        instances,
        summaries,
    })
}

pub fn write_csv<W: Write>(output: &BenchmarkOutput, sink: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(sink);
    for r in output.instances.iter().chain(&output.summaries) {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> BenchmarkSpec {
        let mut s = BenchmarkSpec::new(Model::ImpartialCulture, 12, 6, CommitteeSize::Fixed(3));
        s.runs = vec![(RuleName::Monroe, AlgoName::A), (RuleName::Cc, AlgoName::R)];
        s.repetitions = 4;
        s.seed = 5;
        s.with_opt = true;
        s.params.samples = 3;
        s
    }

    #[test]
    fn committee_size_parsing() {
        assert_eq!(
            "3".parse::<CommitteeSize>().unwrap(),
            CommitteeSize::Fixed(3)
        );
        assert_eq!("0.3".parse::<CommitteeSize>().unwrap().resolve(10), 3);
        assert!("1.5".parse::<CommitteeSize>().is_err());
        assert!("x".parse::<CommitteeSize>().is_err());
    }

    #[test]
    fn rows_and_summaries() {
        let out = run_benchmark(&spec()).unwrap();
        assert_eq!(out.instances.len(), 8);
        assert_eq!(out.summaries.len(), 2);
        for r in &out.instances {
            let ratio = r.ratio_to_opt.unwrap();
            assert!(ratio > 0.0 && ratio <= 1.0);
        }
        assert_eq!(out.summaries[0].count, Some(4));
    }

    #[test]
    fn reproducible_apart_from_timing() {
        let strip = |o: BenchmarkOutput| -> Vec<Record> {
            o.instances
                .into_iter()
                .chain(o.summaries)
                .map(|mut r| {
                    r.wall_time_ms = 0.0;
                    r
                })
                .collect()
        };
        assert_eq!(
            strip(run_benchmark(&spec()).unwrap()),
            strip(run_benchmark(&spec()).unwrap())
        );
    }

    #[test]
    fn truncation_sweep_has_one_summary_per_depth() {
        let mut s = spec();
        s.runs = vec![(RuleName::Cc, AlgoName::C)];
        s.truncation = (1..=6).collect();
        s.with_opt = false;
        let out = run_benchmark(&s).unwrap();
        assert_eq!(out.summaries.len(), 6);
        assert!(out.summaries.iter().all(|r| r.mean_ratio_to_opt.is_none()));
    }

    #[test]
    fn bad_specs() {
        let mut s = spec();
        s.repetitions = 0;
        assert!(run_benchmark(&s).is_err());
        let mut s = spec();
        s.truncation = vec![7];
        assert!(run_benchmark(&s).is_err());
    }
}
