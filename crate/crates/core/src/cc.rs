//! Approximation algorithms for utilitarian Chamberlin-Courant.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::assignment::optimal_assignment_cc;
use crate::bounds::{cc_delta_bound, cc_delta_x, cc_p_window, check_open_unit, lambert_w};
use crate::error::{invalid, Result};
use crate::exact::{brute_force_with_budget, DEFAULT_BUDGET};
use crate::model::{ElectionRule, PreferenceProfile, ScoringFunction};
use crate::monroe::sample_best;
use crate::report::{Algorithm, DeltaMetric, SolutionReport};

fn prepare(profile: &PreferenceProfile, psf: &ScoringFunction, k: usize) -> Result<ElectionRule> {
    psf.check_dims(profile)?;
    psf.require_decreasing()?;
    let rule = ElectionRule::chamberlin_courant(k);
    rule.validate(profile)?;
    Ok(rule)
}

fn finish(
    algorithm: Algorithm,
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    committee: Vec<usize>,
) -> Result<SolutionReport> {
    let assignment = optimal_assignment_cc(profile, psf, &committee)?;
    SolutionReport::new(algorithm, profile, psf, committee, assignment)
}

/// Greedy marginal gain: each round adds the member that raises total
/// satisfaction the most (ties to the lower index).
pub fn cc_algo_gm(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    k: usize,
) -> Result<SolutionReport> {
    prepare(profile, psf, k)?;
    let (n, m) = (profile.num_voters(), profile.num_alternatives());
    let mut best = vec![psf.score(m); n];
    let mut committee: Vec<usize> = Vec::with_capacity(k);
    for _ in 0..k {
        let mut pick: Option<(i64, usize)> = None;
        for a in (0..m).filter(|a| !committee.contains(a)) {
            let gain: i64 = (0..n)
                .map(|v| (psf.score(profile.pos(v, a)) - best[v]).max(0))
                .sum();
            if pick.is_none_or(|(g, _)| gain > g) {
                pick = Some((gain, a));
            }
        }
        let a = pick.expect("K <= m").1;
        for (v, b) in best.iter_mut().enumerate() {
            *b = (*b).max(psf.score(profile.pos(v, a)));
        }
        committee.push(a);
    }
    finish(Algorithm::CcGm, profile, psf, committee)
}

struct BeamState {
    winners: Vec<usize>,
    // current representative's position per voter, m + 1 when unrepresented
    rep_pos: Vec<usize>,
}

/// Beam search of width `d`; extending by `a` moves every voter who ranks
/// `a` above their current representative.
pub fn cc_algo_c(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    k: usize,
    d: usize,
) -> Result<SolutionReport> {
    prepare(profile, psf, k)?;
    if d == 0 {
        return Err(invalid("beam width must be at least 1"));
    }
    let (n, m) = (profile.num_voters(), profile.num_alternatives());
    // an unrepresented voter sits below every listed position
    let unrep = m + 1;
    let score_at = |p: usize| if p > m { psf.score(m) } else { psf.score(p) };
    let mut beam = vec![BeamState {
        winners: Vec::new(),
        rep_pos: vec![unrep; n],
    }];
    for _ in 0..k {
        let mut candidates: Vec<(usize, usize, i64)> = Vec::new();
        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (si, state) in beam.iter().enumerate() {
            for a in (0..m).filter(|a| !state.winners.contains(a)) {
                let sat: i64 = (0..n)
                    .map(|v| score_at(profile.pos(v, a).min(state.rep_pos[v])))
                    .sum();
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
            .map(|(si, a, _)| {
                let parent = &beam[si];
                let rep_pos = (0..n)
                    .map(|v| profile.pos(v, a).min(parent.rep_pos[v]))
                    .collect();
                let mut winners = parent.winners.clone();
                winners.push(a);
                BeamState { winners, rep_pos }
            })
            .collect();
    }
    let best = beam.swap_remove(0);
    finish(Algorithm::CcC, profile, psf, best.winners)
}

/// Coverage greedy with window `x`; returns the committee in selection order.
fn coverage(profile: &PreferenceProfile, k: usize, x: usize) -> Vec<usize> {
    let (n, m) = (profile.num_voters(), profile.num_alternatives());
    let mut covered = vec![false; n];
    let mut committee: Vec<usize> = Vec::with_capacity(k);
    let within = |v: usize, a: usize| profile.is_listed(v, a) && profile.pos(v, a) <= x;
    for _ in 0..k {
        let mut pick: Option<(usize, usize)> = None;
        for a in (0..m).filter(|a| !committee.contains(a)) {
            let count = (0..n).filter(|&v| !covered[v] && within(v, a)).count();
            if pick.is_none_or(|(c, _)| count > c) {
                pick = Some((count, a));
            }
        }
        let a = pick.expect("K <= m").1;
        for (v, c) in covered.iter_mut().enumerate() {
            if !*c && within(v, a) {
                *c = true;
            }
        }
        committee.push(a);
    }
    committee
}

/// Algorithm P: each round elects the alternative that the most
/// still-uncovered voters rank within their top `x` positions.
/// `x` defaults to `ceil(m w(K) / K)`.
pub fn cc_algo_p(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    k: usize,
    x_override: Option<usize>,
) -> Result<SolutionReport> {
    prepare(profile, psf, k)?;
    let m = profile.num_alternatives();
    let x = match x_override {
        Some(0) => return Err(invalid("coverage window must be at least 1")),
        Some(x) => x.min(m),
        None => cc_p_window(m, k)?,
    };
    let committee = coverage(profile, k, x);
    finish(Algorithm::CcP, profile, psf, committee)
}

/// Algorithm P with window `ceil(-m ln(delta) / K)`; the report carries the
/// satisfaction of the worst voter among the best `(1 - delta)` share.
pub fn cc_algo_p_delta(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    k: usize,
    delta: f64,
) -> Result<SolutionReport> {
    check_open_unit("delta", delta)?;
    prepare(profile, psf, k)?;
    let m = profile.num_alternatives();
    let x = cc_delta_x(m, k, delta)?;
    let committee = coverage(profile, k, x);
    let mut report = finish(Algorithm::CcPDelta, profile, psf, committee)?;
    report.delta = Some(DeltaMetric {
        delta,
        window: x,
        value: delta_level(profile, psf, &report, delta),
        bound: cc_delta_bound(m, k, delta)?,
    });
    Ok(report)
}

/// Satisfaction of the `ceil((1 - delta) n)`-th happiest voter.
pub fn delta_level(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    report: &SolutionReport,
    delta: f64,
) -> i64 {
    let n = profile.num_voters();
    let mut sats: Vec<i64> = report
        .assignment
        .assigned
        .iter()
        .enumerate()
        .map(|(v, &rep)| crate::model::voter_score(profile, psf, v, rep))
        .collect();
    sats.sort_unstable_by(|a, b| b.cmp(a));
    let dropped = libm::floor(delta * n as f64) as usize;
    let keep = n.saturating_sub(dropped).max(1);
    sats[keep - 1]
}

/// Algorithm P where its guarantee beats `1 - epsilon`, exhaustive search
/// otherwise.
pub fn cc_ptas(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    k: usize,
    epsilon: f64,
) -> Result<SolutionReport> {
    check_open_unit("epsilon", epsilon)?;
    let rule = prepare(profile, psf, k)?;
    if 2.0 * lambert_w(k as f64)? / (k as f64) < epsilon {
        Ok(cc_algo_p(profile, psf, k, None)?.tagged(Algorithm::CcPtas, "greedy-coverage"))
    } else {
        Ok(
            brute_force_with_budget(profile, psf, &rule, DEFAULT_BUDGET, "exact-fixed-k")?
                .tagged(Algorithm::CcPtas, "exact-fixed-k"),
        )
    }
}

/// Best of `samples` uniformly random committees.
pub fn cc_algo_r(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<SolutionReport> {
    let rule = prepare(profile, psf, k)?;
    sample_best(profile, psf, &rule, samples, seed, Algorithm::CcR)
}
