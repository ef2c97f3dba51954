//! Exact winner determination by committee enumeration, and the integer
//! program for external solvers.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::assignment::{best_member, optimal_assignment};
use crate::error::{invalid, Error, Result};
use crate::model::{
    monroe_load_bounds, voter_score, Assignment, ElectionRule, PreferenceProfile, RuleVariant,
    ScoringFunction,
};
use crate::report::{Algorithm, SolutionReport};

/// Largest number of committees the exhaustive search will visit by default.
pub const DEFAULT_BUDGET: u128 = 200_000;

/// `C(m, k)`, saturating.
pub fn binomial(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((m - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Lexicographic enumeration of the `k`-subsets of `0..m`.
#[derive(Debug, Clone)]
pub struct Combinations {
    m: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(m: usize, k: usize) -> Self {
        Self {
            m,
            current: (0..k).collect(),
            done: k > m,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.m - k + i {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

pub(crate) fn check_budget(branch: &'static str, m: usize, k: usize, budget: u128) -> Result<()> {
    let committees = binomial(m, k);
    if committees > budget {
        return Err(Error::BudgetExceeded {
            branch,
            m,
            k,
            committees,
            budget,
        });
    }
    Ok(())
}

/// Optimal committee under `rule`, by enumerating every `K`-subset.
pub fn brute_force_winners(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    rule: &ElectionRule,
) -> Result<SolutionReport> {
    brute_force_with_budget(profile, psf, rule, DEFAULT_BUDGET, "exact")
}

/// As [`brute_force_winners`] with an explicit budget; `branch` names the
/// caller in the budget error.
pub fn brute_force_with_budget(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    rule: &ElectionRule,
    budget: u128,
    branch: &'static str,
) -> Result<SolutionReport> {
    psf.check_dims(profile)?;
    rule.validate(profile)?;
    let (m, k) = (profile.num_alternatives(), rule.committee_size);
    check_budget(branch, m, k, budget)?;

    let mut best: Option<(i64, Vec<usize>, Assignment)> = None;
    match rule.variant {
        RuleVariant::ChamberlinCourant => {
            let mut best_value = i64::MIN;
            let mut best_committee = Vec::new();
            for committee in Combinations::new(m, k) {
                let value: i64 = (0..profile.num_voters())
                    .map(|v| {
                        committee
                            .iter()
                            .map(|&a| psf.score(profile.pos(v, a)))
                            .max()
                            .unwrap_or(0)
                    })
                    .sum();
                if value > best_value {
                    best_value = value;
                    best_committee = committee;
                }
            }
            let assignment = Assignment {
                assigned: (0..profile.num_voters())
                    .map(|v| Some(best_member(profile, psf, v, &best_committee)))
                    .collect(),
            };
            best = Some((best_value, best_committee, assignment));
        }
        _ => {
            for committee in Combinations::new(m, k) {
                let assignment = optimal_assignment(profile, psf, rule, &committee)?;
                let value: i64 = assignment
                    .assigned
                    .iter()
                    .enumerate()
                    .map(|(v, &rep)| voter_score(profile, psf, v, rep))
                    .sum();
                if best.as_ref().is_none_or(|(b, _, _)| value > *b) {
                    best = Some((value, committee, assignment));
                }
            }
        }
    }
    let (_, committee, assignment) = best.expect("at least one committee");
    let mut report = SolutionReport::new(Algorithm::Exact, profile, psf, committee, assignment)?;
    report.evaluation.set_opt(report.evaluation.l1);
    Ok(report)
}

/// Decision variable of the winner-determination program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    /// Alternative `alt` represents `voter`.
    Assign { voter: usize, alt: usize },
    /// Alternative `alt` is elected.
    Select { alt: usize },
}

impl Var {
    pub fn name(&self) -> String {
        match *self {
            Var::Assign { voter, alt } => format!("a_{voter}_{alt}"),
            Var::Select { alt } => format!("x_{alt}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub name: String,
    pub terms: Vec<(i64, Var)>,
    pub comparison: Comparison,
    pub rhs: i64,
}

/// Maximization program over binary variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerProgram {
    pub objective: Vec<(i64, Var)>,
    pub constraints: Vec<LinearConstraint>,
    pub binaries: Vec<Var>,
}

/// Builds the assignment ILP: representation only by elected alternatives,
/// one representative per voter, the rule's load bounds on elected
/// alternatives (absent for Chamberlin-Courant) and at most `K` winners.
pub fn build_ilp(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    rule: &ElectionRule,
) -> Result<IntegerProgram> {
    psf.check_dims(profile)?;
    rule.validate(profile)?;
    if !profile.is_complete() {
        return Err(invalid("the integer program needs complete ballots"));
    }
    let (n, m, k) = (
        profile.num_voters(),
        profile.num_alternatives(),
        rule.committee_size,
    );

    let mut objective = Vec::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            objective.push((
                psf.score(profile.pos(i, j)),
                Var::Assign { voter: i, alt: j },
            ));
        }
    }

    let mut constraints = Vec::new();
    for i in 0..n {
        for j in 0..m {
            constraints.push(LinearConstraint {
                name: format!("elected_{i}_{j}"),
                terms: vec![
                    (1, Var::Assign { voter: i, alt: j }),
                    (-1, Var::Select { alt: j }),
                ],
                comparison: Comparison::Le,
                rhs: 0,
            });
        }
    }
    for i in 0..n {
        constraints.push(LinearConstraint {
            name: format!("one_rep_{i}"),
            terms: (0..m)
                .map(|j| (1, Var::Assign { voter: i, alt: j }))
                .collect(),
            comparison: Comparison::Eq,
            rhs: 1,
        });
    }
    let load_terms = |j: usize| -> Vec<(i64, Var)> {
        (0..n)
            .map(|i| (1, Var::Assign { voter: i, alt: j }))
            .collect()
    };
    match &rule.variant {
        RuleVariant::Monroe => {
            let (lo, hi) = monroe_load_bounds(n, k);
            for j in 0..m {
                let mut terms = load_terms(j);
                terms.push((-(lo as i64), Var::Select { alt: j }));
                constraints.push(LinearConstraint {
                    name: format!("load_lo_{j}"),
                    terms,
                    comparison: Comparison::Ge,
                    rhs: 0,
                });
                let mut terms = load_terms(j);
                terms.push((-(hi as i64), Var::Select { alt: j }));
                constraints.push(LinearConstraint {
                    name: format!("load_hi_{j}"),
                    terms,
                    comparison: Comparison::Le,
                    rhs: 0,
                });
            }
        }
        RuleVariant::GeneralCapacities(caps) => {
            for (j, &cap) in caps.iter().enumerate() {
                let mut terms = load_terms(j);
                terms.push((-(cap as i64), Var::Select { alt: j }));
                constraints.push(LinearConstraint {
                    name: format!("load_hi_{j}"),
                    terms,
                    comparison: Comparison::Le,
                    rhs: 0,
                });
            }
        }
        RuleVariant::ChamberlinCourant => {}
    }
    constraints.push(LinearConstraint {
        name: "committee_size".into(),
        terms: (0..m).map(|j| (1, Var::Select { alt: j })).collect(),
        comparison: Comparison::Le,
        rhs: k as i64,
    });

    let mut binaries: Vec<Var> = objective.iter().map(|&(_, v)| v).collect();
    binaries.extend((0..m).map(|alt| Var::Select { alt }));
    Ok(IntegerProgram {
        objective,
        constraints,
        binaries,
    })
}
