//! Optimal assignment of voters to a fixed committee.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::flow::{self, Capacities};
use crate::model::{
    monroe_load_bounds, Assignment, ElectionRule, PreferenceProfile, RuleVariant, ScoringFunction,
};

fn check_committee(profile: &PreferenceProfile, committee: &[usize]) -> Result<()> {
    if committee.is_empty() {
        return Err(invalid("committee is empty"));
    }
    let m = profile.num_alternatives();
    let mut seen = vec![false; m];
    for &a in committee {
        if a >= m {
            return Err(Error::IndexOutOfRange {
                what: "alternative",
                index: a,
                limit: m,
            });
        }
        if seen[a] {
            return Err(invalid(format!(
                "alternative {a} listed twice in committee"
            )));
        }
        seen[a] = true;
    }
    Ok(())
}

/// Each voter goes to the committee member they score highest (ties: better
/// position, then lower index). Optimal for uncapacitated committees.
pub fn optimal_assignment_cc(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    committee: &[usize],
) -> Result<Assignment> {
    psf.check_dims(profile)?;
    check_committee(profile, committee)?;
    let assigned = (0..profile.num_voters())
        .map(|v| Some(best_member(profile, psf, v, committee)))
        .collect();
    Ok(Assignment { assigned })
}

pub(crate) fn best_member(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    voter: usize,
    committee: &[usize],
) -> usize {
    let key = |a: usize| {
        let p = profile.pos(voter, a);
        (psf.score(p), core::cmp::Reverse(p), core::cmp::Reverse(a))
    };
    committee
        .iter()
        .copied()
        .max_by_key(|&a| key(a))
        .expect("non-empty committee")
}

/// Optimal assignment under a per-member capacity.
///
/// Without `require_balanced`, every member serves at most
/// `per_alternative_capacity` voters and `min(n, |S| * cap)` voters are
/// assigned. With `require_balanced`, every voter is assigned and each member
/// serves between `floor(n/|S|)` and `ceil(n/|S|)` voters (the capacity, if
/// smaller than the ceiling, tightens the upper bound).
pub fn optimal_assignment_capacitated(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    committee: &[usize],
    per_alternative_capacity: usize,
    require_balanced: bool,
) -> Result<Assignment> {
    psf.check_dims(profile)?;
    check_committee(profile, committee)?;
    let n = profile.num_voters();
    let s = committee.len();
    let caps = if require_balanced {
        let (lower, ceil) = monroe_load_bounds(n, s);
        let upper = ceil.min(per_alternative_capacity);
        if s * upper < n {
            return Err(Error::Infeasible(format!(
                "{s} members with capacity {upper} cannot serve {n} voters"
            )));
        }
        Capacities {
            base: vec![lower; s],
            overflow_pool: if upper > lower { n - s * lower } else { 0 },
            allow_unassigned: false,
        }
    } else {
        Capacities {
            base: vec![per_alternative_capacity; s],
            overflow_pool: 0,
            allow_unassigned: true,
        }
    };
    run(profile, psf, committee, &caps)
}

/// Optimal (possibly partial) assignment with an individual capacity per
/// committee member.
pub fn optimal_assignment_with_capacities(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    committee: &[usize],
    capacities: &[usize],
) -> Result<Assignment> {
    psf.check_dims(profile)?;
    check_committee(profile, committee)?;
    if capacities.len() != committee.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} capacities for {} committee members",
            capacities.len(),
            committee.len()
        )));
    }
    let caps = Capacities {
        base: capacities.to_vec(),
        overflow_pool: 0,
        allow_unassigned: true,
    };
    run(profile, psf, committee, &caps)
}

fn run(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    committee: &[usize],
    caps: &Capacities,
) -> Result<Assignment> {
    let columns = flow::solve(profile, psf, committee, caps)
        .ok_or_else(|| Error::Infeasible("capacities cannot hold every voter".into()))?;
    Ok(Assignment {
        assigned: columns
            .into_iter()
            .map(|c| c.map(|j| committee[j]))
            .collect(),
    })
}

/// The rule's optimal assignment for a committee of exactly `K` members
/// (any size up to `K` for Chamberlin-Courant and general capacities).
pub fn optimal_assignment(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    rule: &ElectionRule,
    committee: &[usize],
) -> Result<Assignment> {
    if committee.len() > rule.committee_size {
        return Err(invalid(format!(
            "committee of {} exceeds K = {}",
            committee.len(),
            rule.committee_size
        )));
    }
    match &rule.variant {
        RuleVariant::ChamberlinCourant => optimal_assignment_cc(profile, psf, committee),
        RuleVariant::Monroe => {
            if committee.len() != rule.committee_size {
                return Err(invalid(format!(
                    "Monroe needs exactly K = {} members, got {}",
                    rule.committee_size,
                    committee.len()
                )));
            }
            let (_, ceil) = monroe_load_bounds(profile.num_voters(), rule.committee_size);
            optimal_assignment_capacitated(profile, psf, committee, ceil, true)
        }
        RuleVariant::GeneralCapacities(caps) => {
            let member_caps: Vec<usize> = committee
                .iter()
                .map(|&a| caps.get(a).copied().unwrap_or(0))
                .collect();
            optimal_assignment_with_capacities(profile, psf, committee, &member_caps)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{evaluate, Metric};

    fn l1(p: &PreferenceProfile, psf: &ScoringFunction, a: &Assignment) -> i64 {
        evaluate(p, psf, a, Metric::L1).unwrap()
    }

    #[test]
    fn cc_picks_best_available() {
        let p = PreferenceProfile::new(3, vec![vec![0, 1, 2]]).unwrap();
        let psf = ScoringFunction::borda_dec(3);
        let a = optimal_assignment_cc(&p, &psf, &[1, 2]).unwrap();
        assert_eq!(a.assigned, vec![Some(1)]);
        assert!(optimal_assignment_cc(&p, &psf, &[]).is_err());
        assert!(optimal_assignment_cc(&p, &psf, &[1, 1]).is_err());
    }

    #[test]
    fn cc_full_committee_reaches_ideal() {
        let p =
            PreferenceProfile::new(3, vec![vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]]).unwrap();
        let psf = ScoringFunction::borda_dec(3);
        let a = optimal_assignment_cc(&p, &psf, &[0, 1, 2]).unwrap();
        assert_eq!(l1(&p, &psf, &a), 6);
    }

    #[test]
    fn cc_singleton_on_three_voters() {
        let p =
            PreferenceProfile::new(3, vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2]]).unwrap();
        let psf = ScoringFunction::borda_dec(3);
        let a = optimal_assignment_cc(&p, &psf, &[0]).unwrap();
        assert_eq!(l1(&p, &psf, &a), 5);
    }

    #[test]
    fn balanced_four_voters() {
        // v1..v3: a > b, v4: b > a
        let p = PreferenceProfile::new(2, vec![vec![0, 1], vec![0, 1], vec![0, 1], vec![1, 0]])
            .unwrap();
        let psf = ScoringFunction::borda_dec(2);
        let a = optimal_assignment_capacitated(&p, &psf, &[0, 1], 2, true).unwrap();
        assert_eq!(l1(&p, &psf, &a), 3);
        assert_eq!(a.loads(2), vec![2, 2]);
        assert_eq!(a.assigned[3], Some(1));
    }

    #[test]
    fn perfect_matching() {
        let p = PreferenceProfile::new(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let psf = ScoringFunction::borda_dec(2);
        let a = optimal_assignment_capacitated(&p, &psf, &[0, 1], 1, true).unwrap();
        assert_eq!(a.assigned, vec![Some(0), Some(1)]);
    }

    #[test]
    fn singleton_with_full_capacity_matches_cc() {
        let p =
            PreferenceProfile::new(3, vec![vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]]).unwrap();
        let psf = ScoringFunction::borda_dec(3);
        for a in 0..3 {
            let flow = optimal_assignment_capacitated(&p, &psf, &[a], 3, false).unwrap();
            let cc = optimal_assignment_cc(&p, &psf, &[a]).unwrap();
            assert_eq!(flow, cc);
        }
    }

    #[test]
    fn partial_assigns_up_to_capacity() {
        let p = PreferenceProfile::new(3, (0..5).map(|_| vec![0, 1, 2]).collect()).unwrap();
        let psf = ScoringFunction::borda_dec(3);
        let a = optimal_assignment_capacitated(&p, &psf, &[0, 2], 2, false).unwrap();
        assert_eq!(a.num_assigned(), 4);
        assert_eq!(l1(&p, &psf, &a), 4);
    }

    #[test]
    fn partial_fills_slots_even_at_zero_score() {
        // both voters score the only member 0 under the truncated function
        let p = PreferenceProfile::new(3, vec![vec![0], vec![1]]).unwrap();
        let psf = ScoringFunction::truncated(3, 1).unwrap();
        let a = optimal_assignment_capacitated(&p, &psf, &[2], 2, false).unwrap();
        assert_eq!(a.num_assigned(), 2);
    }

    #[test]
    fn balanced_uneven_split() {
        // n = 7, K = 3 -> loads in {2, 3}
        let p = PreferenceProfile::new(4, (0..7).map(|_| vec![0, 1, 2, 3]).collect()).unwrap();
        let psf = ScoringFunction::borda_dec(4);
        let a = optimal_assignment_capacitated(&p, &psf, &[0, 1, 2], 3, true).unwrap();
        let mut loads: Vec<usize> = a.loads(4).into_iter().filter(|&l| l > 0).collect();
        loads.sort_unstable();
        assert_eq!(loads, vec![2, 2, 3]);
        // the extra voter goes to the favourite
        assert_eq!(a.loads(4)[0], 3);
        assert_eq!(l1(&p, &psf, &a), 3 * 3 + 2 * 2 + 2);
    }

    #[test]
    fn balanced_infeasible_capacity() {
        let p = PreferenceProfile::new(2, (0..5).map(|_| vec![0, 1]).collect()).unwrap();
        let psf = ScoringFunction::borda_dec(2);
        assert!(matches!(
            optimal_assignment_capacitated(&p, &psf, &[0, 1], 2, true),
            Err(Error::Infeasible(_))
        ));
    }
}
