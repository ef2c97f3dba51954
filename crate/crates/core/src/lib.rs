//! Winner determination for the Monroe and Chamberlin-Courant multiwinner
//! voting rules.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, the benchmark
//! harness and the command-line tool live in the `committee` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod assignment;
pub mod bounds;
pub mod cc;
mod error;
pub mod exact;
mod flow;
pub mod model;
pub mod monroe;
pub mod profiles;
pub mod report;
pub mod rng;

pub use assignment::{
    optimal_assignment, optimal_assignment_capacitated, optimal_assignment_cc,
    optimal_assignment_with_capacities,
};
pub use error::{Error, Result};
pub use exact::{brute_force_winners, build_ilp, IntegerProgram};
pub use model::{
    evaluate, ideal_satisfaction, Assignment, ElectionRule, EvaluationReport, Metric,
    PreferenceProfile, RuleVariant, ScoringFunction, ScoringKind,
};
pub use report::{Algorithm, DeltaMetric, SolutionReport};
