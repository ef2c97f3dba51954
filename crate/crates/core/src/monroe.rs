//! Approximation algorithms for utilitarian Monroe.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::assignment::{optimal_assignment, optimal_assignment_capacitated};
use crate::bounds::{ar_sample_count, check_open_unit, harmonic_f64};
use crate::error::{invalid, Result};
use crate::exact::{binomial, brute_force_with_budget, DEFAULT_BUDGET};
use crate::model::{
    monroe_load_bounds, voter_score, Assignment, ElectionRule, PreferenceProfile, ScoringFunction,
};
use crate::report::{Algorithm, SolutionReport};
use crate::rng;

fn prepare(profile: &PreferenceProfile, psf: &ScoringFunction, k: usize) -> Result<ElectionRule> {
    psf.check_dims(profile)?;
    psf.require_decreasing()?;
    let rule = ElectionRule::monroe(k);
    rule.validate(profile)?;
    Ok(rule)
}

// small committees are solved exactly; C(m, 2) is polynomial so no budget
fn exact_small_k(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    rule: &ElectionRule,
    algorithm: Algorithm,
) -> Result<SolutionReport> {
    let budget = binomial(profile.num_alternatives(), rule.committee_size);
    Ok(
        brute_force_with_budget(profile, psf, rule, budget, "exact-small-k")?
            .tagged(algorithm, "exact-small-k"),
    )
}

/// Voters of each alternative ordered by position, then index.
fn voters_by_position(profile: &PreferenceProfile) -> Vec<Vec<usize>> {
    (0..profile.num_alternatives())
        .map(|a| {
            let mut vs: Vec<usize> = (0..profile.num_voters()).collect();
            vs.sort_by_key(|&v| (profile.pos(v, a), v));
            vs
        })
        .collect()
}

/// Voters served in round `i`: the first `n mod K` rounds take one extra.
fn round_size(n: usize, k: usize, i: usize) -> usize {
    let (q, _) = monroe_load_bounds(n, k);
    q + usize::from(i < n % k)
}

fn round_score(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    alt: usize,
    order: &[usize],
    assigned: &[Option<usize>],
    take: usize,
) -> i64 {
    order
        .iter()
        .filter(|&&v| assigned[v].is_none())
        .take(take)
        .map(|&v| psf.score(profile.pos(v, alt)))
        .sum()
}

fn claim(order: &[usize], assigned: &mut [Option<usize>], alt: usize, take: usize) {
    let mut left = take;
    for &v in order {
        if left == 0 {
            break;
        }
        if assigned[v].is_none() {
            assigned[v] = Some(alt);
            left -= 1;
        }
    }
}

/// Greedy rounds of Algorithm A; committee in selection order.
fn greedy(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    k: usize,
) -> (Vec<usize>, Assignment) {
    let (n, m) = (profile.num_voters(), profile.num_alternatives());
    let order = voters_by_position(profile);
    let mut assigned = vec![None; n];
    let mut used = vec![false; m];
    let mut committee = Vec::with_capacity(k);
    for i in 0..k {
        let take = round_size(n, k, i);
        let mut best: Option<(i64, usize)> = None;
        for a in (0..m).filter(|&a| !used[a]) {
            let s = round_score(profile, psf, a, &order[a], &assigned, take);
            if best.is_none_or(|(b, _)| s > b) {
                best = Some((s, a));
            }
        }
        let (_, a) = best.expect("K <= m leaves an unused alternative");
        used[a] = true;
        committee.push(a);
        claim(&order[a], &mut assigned, a, take);
    }
    (committee, Assignment { assigned })
}

/// Algorithm A: `K` greedy rounds, each electing the alternative whose best
/// `n/K` unassigned voters are happiest. `K <= 2` is solved exactly.
pub fn algo_a(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    k: usize,
) -> Result<SolutionReport> {
    let rule = prepare(profile, psf, k)?;
    if k <= 2 {
        return exact_small_k(profile, psf, &rule, Algorithm::MonroeA);
    }
    let (committee, assignment) = greedy(profile, psf, k);
    SolutionReport::new(Algorithm::MonroeA, profile, psf, committee, assignment)
}

/// Algorithm B: Algorithm A's committee with an optimal balanced assignment.
pub fn algo_b(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    k: usize,
) -> Result<SolutionReport> {
    let rule = prepare(profile, psf, k)?;
    if k <= 2 {
        return exact_small_k(profile, psf, &rule, Algorithm::MonroeB);
    }
    let (committee, _) = greedy(profile, psf, k);
    let assignment = optimal_assignment(profile, psf, &rule, &committee)?;
    SolutionReport::new(Algorithm::MonroeB, profile, psf, committee, assignment)
}

struct BeamState {
    winners: Vec<usize>,
    assigned: Vec<Option<usize>>,
    sat: i64,
}

/// Algorithm C: beam search over partial assignments, keeping `d` states
/// per round, then an optimal balanced assignment for every kept committee
/// and for Algorithm A's committee.
pub fn algo_c(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    k: usize,
    d: usize,
) -> Result<SolutionReport> {
    let rule = prepare(profile, psf, k)?;
    if d == 0 {
        return Err(invalid("beam width must be at least 1"));
    }
    if k <= 2 {
        return exact_small_k(profile, psf, &rule, Algorithm::MonroeC);
    }
    let (n, m) = (profile.num_voters(), profile.num_alternatives());
    let order = voters_by_position(profile);
    let mut beam = vec![BeamState {
        winners: Vec::new(),
        assigned: vec![None; n],
        sat: 0,
    }];
    for i in 0..k {
        let take = round_size(n, k, i);
        // (state, alternative, satisfaction) keyed by the winner set
        let mut candidates: Vec<(usize, usize, i64)> = Vec::new();
        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (si, state) in beam.iter().enumerate() {
            for a in (0..m).filter(|a| !state.winners.contains(a)) {
                let sat =
                    state.sat + round_score(profile, psf, a, &order[a], &state.assigned, take);
                let mut key = state.winners.clone();
                key.push(a);
                key.sort_unstable();
                match seen.get(&key) {
                    Some(&c) if candidates[c].2 >= sat => {}
                    Some(&c) => candidates[c] = (si, a, sat),
                    None => {
                        seen.insert(key, candidates.len());
                        candidates.push((si, a, sat));
                    }
                }
            }
        }
        candidates.sort_by_key(|c| core::cmp::Reverse(c.2));
        candidates.truncate(d);
        beam = candidates
            .into_iter()
            .map(|(si, a, sat)| {
                let parent = &beam[si];
                let mut assigned = parent.assigned.clone();
                claim(&order[a], &mut assigned, a, take);
                let mut winners = parent.winners.clone();
                winners.push(a);
                BeamState {
                    winners,
                    assigned,
                    sat,
                }
            })
            .collect();
    }

    // the greedy committee stays a candidate so C never does worse than B
    let mut finalists: Vec<Vec<usize>> = beam.into_iter().map(|s| s.winners).collect();
    let (greedy_committee, _) = greedy(profile, psf, k);
    finalists.push(greedy_committee);
    let mut best: Option<(i64, Vec<usize>, Assignment)> = None;
    for winners in finalists {
        let assignment = optimal_assignment(profile, psf, &rule, &winners)?;
        let value = l1_of(profile, psf, &assignment);
        if best.as_ref().is_none_or(|(b, _, _)| value > *b) {
            best = Some((value, winners, assignment));
        }
    }
    let (_, committee, assignment) = best.expect("beam is never empty");
    SolutionReport::new(Algorithm::MonroeC, profile, psf, committee, assignment)
}

fn l1_of(profile: &PreferenceProfile, psf: &ScoringFunction, assignment: &Assignment) -> i64 {
    assignment
        .assigned
        .iter()
        .enumerate()
        .map(|(v, &rep)| voter_score(profile, psf, v, rep))
        .sum()
}

/// Algorithm GM: grow the committee by the member that most increases the
/// optimal partial assignment, each member serving at most `ceil(n/K)`.
pub fn algo_gm(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    k: usize,
) -> Result<SolutionReport> {
    let rule = prepare(profile, psf, k)?;
    let (n, m) = (profile.num_voters(), profile.num_alternatives());
    let (_, cap) = monroe_load_bounds(n, k);
    let mut committee: Vec<usize> = Vec::with_capacity(k);
    for _ in 0..k {
        let mut best: Option<(i64, usize)> = None;
        for a in (0..m).filter(|a| !committee.contains(a)) {
            let mut trial = committee.clone();
            trial.push(a);
            let partial = optimal_assignment_capacitated(profile, psf, &trial, cap, false)?;
            let value = l1_of(profile, psf, &partial);
            if best.is_none_or(|(b, _)| value > b) {
                best = Some((value, a));
            }
        }
        committee.push(best.expect("K <= m").1);
    }
    let assignment = optimal_assignment(profile, psf, &rule, &committee)?;
    SolutionReport::new(Algorithm::MonroeGm, profile, psf, committee, assignment)
}

/// Algorithm R: best of `samples` uniformly random committees.
pub fn algo_r(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<SolutionReport> {
    let rule = prepare(profile, psf, k)?;
    sample_best(profile, psf, &rule, samples, seed, Algorithm::MonroeR)
}

pub(crate) fn sample_best(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    rule: &ElectionRule,
    samples: usize,
    seed: u64,
    algorithm: Algorithm,
) -> Result<SolutionReport> {
    if samples == 0 {
        return Err(invalid("need at least one sample"));
    }
    let m = profile.num_alternatives();
    let mut best: Option<(i64, Vec<usize>, Assignment)> = None;
    for i in 0..samples {
        let committee = rng::sample_subset(seed, i as u64, m, rule.committee_size);
        let assignment = optimal_assignment(profile, psf, rule, &committee)?;
        let value = l1_of(profile, psf, &assignment);
        if best.as_ref().is_none_or(|(b, _, _)| value > *b) {
            best = Some((value, committee, assignment));
        }
    }
    let (_, committee, assignment) = best.expect("samples >= 1");
    Ok(SolutionReport::new(algorithm, profile, psf, committee, assignment)?.with_seed(seed))
}

/// Algorithm AR: exact search where the greedy guarantee is weak or the
/// instance is small, otherwise the better of Algorithm A and sampling.
pub fn algo_ar(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    k: usize,
    epsilon: f64,
    lambda: f64,
    seed: u64,
) -> Result<SolutionReport> {
    check_open_unit("epsilon", epsilon)?;
    check_open_unit("lambda", lambda)?;
    let rule = prepare(profile, psf, k)?;
    let m = profile.num_alternatives();
    let exact = |branch: &'static str| -> Result<SolutionReport> {
        Ok(
            brute_force_with_budget(profile, psf, &rule, DEFAULT_BUDGET, branch)?
                .tagged(Algorithm::MonroeAr, branch)
                .with_seed(seed),
        )
    };
    if harmonic_f64(k) / k as f64 >= epsilon / 2.0 || k <= 8 {
        return exact("exact-fixed-k");
    }
    if m as f64 <= 1.0 + 2.0 / epsilon {
        return exact("exact-small-m");
    }
    let samples = ar_sample_count(k, epsilon, lambda)?;
    let greedy = algo_a(profile, psf, k)?;
    let sampled = algo_r(profile, psf, k, samples, seed)?;
    let (winner, branch) = if sampled.l1() > greedy.l1() {
        (sampled, "sampling")
    } else {
        (greedy, "greedy")
    };
    Ok(winner.tagged(Algorithm::MonroeAr, branch).with_seed(seed))
}
