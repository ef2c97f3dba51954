//! Elections, positional scoring functions, assignments and the aggregate
//! (dis)satisfaction metrics.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::error::{invalid, Error, Result};

/// Strict (possibly truncated) rankings of `n` voters over `m` alternatives.
///
/// Alternatives and voters are dense 0-based indices. A ballot may list only a
/// prefix of the alternatives; every unlisted alternative shares the bottom
/// position `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceProfile {
    num_alternatives: usize,
    rankings: Vec<Vec<usize>>,
    // row-major n x m table of 1-based positions, `m` for unlisted
    positions: Vec<u32>,
    names: Option<Vec<String>>,
}

impl PreferenceProfile {
    pub fn new(num_alternatives: usize, rankings: Vec<Vec<usize>>) -> Result<Self> {
        if num_alternatives == 0 {
            return Err(invalid("a profile needs at least one alternative"));
        }
        let m = num_alternatives;
        let mut positions = vec![m as u32; rankings.len() * m];
        for (v, ballot) in rankings.iter().enumerate() {
            if ballot.is_empty() {
                return Err(invalid(format!("voter {v} has an empty ballot")));
            }
            if ballot.len() > m {
                return Err(invalid(format!(
                    "voter {v} ranks {} alternatives but only {m} exist",
                    ballot.len()
                )));
            }
            let row = &mut positions[v * m..(v + 1) * m];
            let mut seen = vec![false; m];
            for (p, &a) in ballot.iter().enumerate() {
                if a >= m {
                    return Err(Error::IndexOutOfRange {
                        what: "alternative",
                        index: a,
                        limit: m,
                    });
                }
                if seen[a] {
                    return Err(invalid(format!("voter {v} ranks alternative {a} twice")));
                }
                seen[a] = true;
                row[a] = (p + 1) as u32;
            }
        }
        Ok(Self {
            num_alternatives,
            rankings,
            positions,
            names: None,
        })
    }

    /// Attaches display names for the alternatives.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.num_alternatives {
            return Err(Error::DimensionMismatch(format!(
                "{} names for {} alternatives",
                names.len(),
                self.num_alternatives
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn num_voters(&self) -> usize {
        self.rankings.len()
    }

    pub fn num_alternatives(&self) -> usize {
        self.num_alternatives
    }

    pub fn rankings(&self) -> &[Vec<usize>] {
        &self.rankings
    }

    pub fn ranking(&self, voter: usize) -> &[usize] {
        &self.rankings[voter]
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// True iff every ballot ranks all alternatives.
    pub fn is_complete(&self) -> bool {
        self.rankings
            .iter()
            .all(|r| r.len() == self.num_alternatives)
    }

    /// 1-based position of `alt` in the ballot of `voter`, or `m` if unlisted.
    pub fn position_of(&self, voter: usize, alt: usize) -> Result<usize> {
        if voter >= self.num_voters() {
            return Err(Error::IndexOutOfRange {
                what: "voter",
                index: voter,
                limit: self.num_voters(),
            });
        }
        if alt >= self.num_alternatives {
            return Err(Error::IndexOutOfRange {
                what: "alternative",
                index: alt,
                limit: self.num_alternatives,
            });
        }
        Ok(self.pos(voter, alt))
    }

    /// Unchecked variant of [`position_of`](Self::position_of).
    #[inline]
    pub fn pos(&self, voter: usize, alt: usize) -> usize {
        self.positions[voter * self.num_alternatives + alt] as usize
    }

    /// Whether `alt` appears on the ballot of `voter`.
    #[inline]
    pub fn is_listed(&self, voter: usize, alt: usize) -> bool {
        let p = self.pos(voter, alt);
        p < self.num_alternatives || self.rankings[voter].len() == self.num_alternatives
    }

    /// Each ballot cut to its top `min(depth, len)` entries.
    pub fn truncate(&self, depth: usize) -> Result<Self> {
        if depth == 0 || depth > self.num_alternatives {
            return Err(invalid(format!(
                "truncation depth {depth} outside 1..={}",
                self.num_alternatives
            )));
        }
        let rankings = self
            .rankings
            .iter()
            .map(|r| r[..r.len().min(depth)].to_vec())
            .collect();
        let mut out = Self::new(self.num_alternatives, rankings)?;
        out.names = self.names.clone();
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoringKind {
    BordaDecreasing,
    BordaIncreasing,
    Truncated { depth: usize },
    Custom,
}

/// Positional scoring function: the score of every 1-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoringFunction {
    scores: Vec<i64>,
    kind: ScoringKind,
}

impl ScoringFunction {
    /// Borda satisfaction, `m - p`.
    pub fn borda_dec(m: usize) -> Self {
        Self {
            scores: (1..=m).map(|p| (m - p) as i64).collect(),
            kind: ScoringKind::BordaDecreasing,
        }
    }

    /// Borda dissatisfaction, `p - 1`.
    pub fn borda_inc(m: usize) -> Self {
        Self {
            scores: (1..=m).map(|p| (p - 1) as i64).collect(),
            kind: ScoringKind::BordaIncreasing,
        }
    }

    /// `<m-1, m-2, ..., m-depth, 0, ..., 0>`
    pub fn truncated(m: usize, depth: usize) -> Result<Self> {
        if depth == 0 || depth > m {
            return Err(invalid(format!("truncation depth {depth} outside 1..={m}")));
        }
        Ok(Self {
            scores: (1..=m)
                .map(|p| if p <= depth { (m - p) as i64 } else { 0 })
                .collect(),
            kind: ScoringKind::Truncated { depth },
        })
    }

    pub fn custom(scores: Vec<i64>) -> Result<Self> {
        if scores.is_empty() {
            return Err(invalid("scoring vector is empty"));
        }
        Ok(Self {
            scores,
            kind: ScoringKind::Custom,
        })
    }

    pub fn kind(&self) -> ScoringKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn scores(&self) -> &[i64] {
        &self.scores
    }

    /// Score at 1-based position `p`.
    #[inline]
    pub fn score(&self, p: usize) -> i64 {
        self.scores[p - 1]
    }

    pub fn top_score(&self) -> i64 {
        self.scores[0]
    }

    pub fn max_score(&self) -> i64 {
        self.scores.iter().copied().max().unwrap_or(0)
    }

    /// Non-increasing in position (a satisfaction function).
    pub fn is_decreasing(&self) -> bool {
        self.scores.windows(2).all(|w| w[0] >= w[1])
    }

    pub(crate) fn check_dims(&self, profile: &PreferenceProfile) -> Result<()> {
        if self.scores.len() != profile.num_alternatives() {
            return Err(Error::DimensionMismatch(format!(
                "scoring function has {} entries for {} alternatives",
                self.scores.len(),
                profile.num_alternatives()
            )));
        }
        Ok(())
    }

    pub(crate) fn require_decreasing(&self) -> Result<()> {
        if !self.is_decreasing() {
            return Err(invalid(
                "algorithm requires a satisfaction (non-increasing) scoring function",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleVariant {
    Monroe,
    ChamberlinCourant,
    /// Explicit per-alternative capacity.
    GeneralCapacities(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElectionRule {
    pub variant: RuleVariant,
    pub committee_size: usize,
}

impl ElectionRule {
    pub fn monroe(k: usize) -> Self {
        Self {
            variant: RuleVariant::Monroe,
            committee_size: k,
        }
    }

    pub fn chamberlin_courant(k: usize) -> Self {
        Self {
            variant: RuleVariant::ChamberlinCourant,
            committee_size: k,
        }
    }

    pub fn general(k: usize, capacities: Vec<usize>) -> Self {
        Self {
            variant: RuleVariant::GeneralCapacities(capacities),
            committee_size: k,
        }
    }

    /// Load bounds `(lower, upper)` for a used committee member among `n` voters.
    pub fn load_bounds(&self, n: usize, alt: usize) -> (usize, usize) {
        match &self.variant {
            RuleVariant::Monroe => monroe_load_bounds(n, self.committee_size),
            RuleVariant::ChamberlinCourant => (0, n),
            RuleVariant::GeneralCapacities(caps) => (0, caps.get(alt).copied().unwrap_or(0)),
        }
    }

    pub(crate) fn validate(&self, profile: &PreferenceProfile) -> Result<()> {
        let (n, m, k) = (
            profile.num_voters(),
            profile.num_alternatives(),
            self.committee_size,
        );
        if k == 0 || k > m {
            return Err(invalid(format!("committee size {k} outside 1..={m}")));
        }
        match &self.variant {
            RuleVariant::Monroe if k > n => Err(invalid(format!(
                "committee size {k} exceeds the {n} voters"
            ))),
            RuleVariant::GeneralCapacities(caps) if caps.len() != m => Err(
                Error::DimensionMismatch(format!("{} capacities for {m} alternatives", caps.len())),
            ),
            _ => Ok(()),
        }
    }
}

/// `(floor(n/k), ceil(n/k))`
pub fn monroe_load_bounds(n: usize, k: usize) -> (usize, usize) {
    (n / k, n.div_ceil(k))
}

/// Voter-to-representative map; `None` is the unassigned marker.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    pub assigned: Vec<Option<usize>>,
}

impl Assignment {
    pub fn unassigned(n: usize) -> Self {
        Self {
            assigned: vec![None; n],
        }
    }

    pub fn num_voters(&self) -> usize {
        self.assigned.len()
    }

    /// Sorted alternatives representing at least one voter.
    pub fn used_committee(&self) -> Vec<usize> {
        let mut used: Vec<usize> = self.assigned.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        used
    }

    pub fn loads(&self, m: usize) -> Vec<usize> {
        let mut loads = vec![0; m];
        for &a in self.assigned.iter().flatten() {
            loads[a] += 1;
        }
        loads
    }

    pub fn num_assigned(&self) -> usize {
        self.assigned.iter().filter(|a| a.is_some()).count()
    }

    /// Checks committee size and the rule's load bounds.
    pub fn respects(&self, rule: &ElectionRule, m: usize) -> bool {
        let n = self.assigned.len();
        let used = self.used_committee();
        if used.len() > rule.committee_size || used.iter().any(|&a| a >= m) {
            return false;
        }
        let loads = self.loads(m);
        used.iter().all(|&a| {
            let (lo, hi) = rule.load_bounds(n, a);
            (lo..=hi).contains(&loads[a])
        })
    }

    pub(crate) fn check_dims(&self, profile: &PreferenceProfile) -> Result<()> {
        if self.assigned.len() != profile.num_voters() {
            return Err(Error::DimensionMismatch(format!(
                "assignment covers {} voters, profile has {}",
                self.assigned.len(),
                profile.num_voters()
            )));
        }
        if let Some(&a) = self
            .assigned
            .iter()
            .flatten()
            .find(|&&a| a >= profile.num_alternatives())
        {
            return Err(Error::IndexOutOfRange {
                what: "alternative",
                index: a,
                limit: profile.num_alternatives(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// Sum over voters.
    L1,
    /// Worst (largest) voter value.
    LInf,
    /// Smallest voter value.
    LMin,
}

/// Score voter `v` derives from `rep`; the unassigned marker sits at position `m`.
#[inline]
pub fn voter_score(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    voter: usize,
    rep: Option<usize>,
) -> i64 {
    match rep {
        Some(a) => psf.score(profile.pos(voter, a)),
        None => psf.score(profile.num_alternatives()),
    }
}

pub fn evaluate(
    profile: &PreferenceProfile,
    psf: &ScoringFunction,
    assignment: &Assignment,
    metric: Metric,
) -> Result<i64> {
    psf.check_dims(profile)?;
    assignment.check_dims(profile)?;
    let per_voter = assignment
        .assigned
        .iter()
        .enumerate()
        .map(|(v, &rep)| voter_score(profile, psf, v, rep));
    Ok(match metric {
        Metric::L1 => per_voter.sum(),
        Metric::LInf => per_voter.max().unwrap_or(0),
        Metric::LMin => per_voter.min().unwrap_or(0),
    })
}

/// `n * score[1]`: every voter matched to their favourite.
pub fn ideal_satisfaction(profile: &PreferenceProfile, psf: &ScoringFunction) -> i64 {
    profile.num_voters() as i64 * psf.top_score()
}

/// Aggregate metrics of one assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationReport {
    pub l1: i64,
    pub l_inf: i64,
    pub l_min: i64,
    pub ideal: i64,
    pub ratio_to_ideal: Option<Ratio<i64>>,
    pub ratio_to_opt: Option<Ratio<i64>>,
}

impl EvaluationReport {
    pub fn compute(
        profile: &PreferenceProfile,
        psf: &ScoringFunction,
        assignment: &Assignment,
    ) -> Result<Self> {
        let l1 = evaluate(profile, psf, assignment, Metric::L1)?;
        let ideal = ideal_satisfaction(profile, psf);
        Ok(Self {
            l1,
            l_inf: evaluate(profile, psf, assignment, Metric::LInf)?,
            l_min: evaluate(profile, psf, assignment, Metric::LMin)?,
            ideal,
            ratio_to_ideal: ratio(l1, ideal),
            ratio_to_opt: None,
        })
    }

    pub fn set_opt(&mut self, c_opt: i64) {
        self.ratio_to_opt = ratio(self.l1, c_opt);
    }
}

pub(crate) fn ratio(num: i64, den: i64) -> Option<Ratio<i64>> {
    (den != 0).then(|| Ratio::new(num, den))
}

/// Decimal rendering of an exact ratio.
pub fn ratio_to_f64(r: &Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_voters() -> PreferenceProfile {
        // a=0, b=1, c=2
        PreferenceProfile::new(3, vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2]]).unwrap()
    }

    #[test]
    fn positions_of_listed_and_unlisted() {
        let p = PreferenceProfile::new(10, vec![(0..10).collect(), vec![4, 2, 7]]).unwrap();
        assert_eq!(p.position_of(0, 0).unwrap(), 1);
        assert_eq!(p.position_of(0, 9).unwrap(), 10);
        assert_eq!(p.position_of(1, 0).unwrap(), 10);
        assert_eq!(p.position_of(1, 7).unwrap(), 3);
        assert!(p.is_listed(0, 9));
        assert!(!p.is_listed(1, 9));
        assert!(!p.is_complete());
        assert!(matches!(
            p.position_of(2, 0),
            Err(Error::IndexOutOfRange { what: "voter", .. })
        ));
        assert!(matches!(
            p.position_of(0, 10),
            Err(Error::IndexOutOfRange {
                what: "alternative",
                ..
            })
        ));
    }

    #[test]
    fn malformed_ballots_rejected() {
        assert!(PreferenceProfile::new(3, vec![vec![0, 0]]).is_err());
        assert!(PreferenceProfile::new(3, vec![vec![3]]).is_err());
        assert!(PreferenceProfile::new(3, vec![vec![]]).is_err());
        assert!(PreferenceProfile::new(0, vec![]).is_err());
    }

    #[test]
    fn scoring_vectors() {
        assert_eq!(ScoringFunction::borda_dec(4).scores(), &[3, 2, 1, 0]);
        assert_eq!(ScoringFunction::borda_inc(4).scores(), &[0, 1, 2, 3]);
        assert_eq!(
            ScoringFunction::truncated(6, 2).unwrap().scores(),
            &[5, 4, 0, 0, 0, 0]
        );
        assert!(ScoringFunction::truncated(6, 0).is_err());
        let course = ScoringFunction::custom(vec![3, 3, 3, 2, 1, 0]).unwrap();
        assert!(course.is_decreasing());
        assert!(!ScoringFunction::borda_inc(3).is_decreasing());
    }

    #[test]
    fn truncated_psf_agrees_with_borda_prefix() {
        for m in 1..8 {
            let borda = ScoringFunction::borda_dec(m);
            for depth in 1..=m {
                let t = ScoringFunction::truncated(m, depth).unwrap();
                for p in 1..=m {
                    let expected = if p <= depth { borda.score(p) } else { 0 };
                    assert_eq!(t.score(p), expected);
                }
            }
        }
    }

    #[test]
    fn evaluate_small_cases() {
        let psf = ScoringFunction::borda_dec(2);
        let p = PreferenceProfile::new(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let tops = Assignment {
            assigned: vec![Some(0), Some(1)],
        };
        assert_eq!(evaluate(&p, &psf, &tops, Metric::L1).unwrap(), 2);
        let both_a = Assignment {
            assigned: vec![Some(0), Some(0)],
        };
        assert_eq!(evaluate(&p, &psf, &both_a, Metric::L1).unwrap(), 1);
        assert_eq!(evaluate(&p, &psf, &both_a, Metric::LMin).unwrap(), 0);
        assert_eq!(evaluate(&p, &psf, &both_a, Metric::LInf).unwrap(), 1);

        let p3 = three_voters();
        let psf3 = ScoringFunction::borda_dec(3);
        let all_a = Assignment {
            assigned: vec![Some(0); 3],
        };
        // 2 + 2 + 1
        assert_eq!(evaluate(&p3, &psf3, &all_a, Metric::L1).unwrap(), 5);
    }

    #[test]
    fn unassigned_voters_score_bottom() {
        let p = three_voters();
        let psf = ScoringFunction::borda_dec(3);
        let partial = Assignment {
            assigned: vec![Some(0), None, None],
        };
        assert_eq!(evaluate(&p, &psf, &partial, Metric::L1).unwrap(), 2);
        let inc = ScoringFunction::borda_inc(3);
        assert_eq!(evaluate(&p, &inc, &partial, Metric::L1).unwrap(), 4);
    }

    #[test]
    fn evaluate_rejects_mismatched_dims() {
        let p = three_voters();
        let psf = ScoringFunction::borda_dec(3);
        let short = Assignment::unassigned(2);
        assert!(evaluate(&p, &psf, &short, Metric::L1).is_err());
        let wrong_psf = ScoringFunction::borda_dec(4);
        assert!(evaluate(&p, &wrong_psf, &Assignment::unassigned(3), Metric::L1).is_err());
        let bad_alt = Assignment {
            assigned: vec![Some(5), None, None],
        };
        assert!(evaluate(&p, &psf, &bad_alt, Metric::L1).is_err());
    }

    #[test]
    fn ideal_values() {
        let mk = |n: usize, m: usize| {
            PreferenceProfile::new(m, (0..n).map(|_| (0..m).collect()).collect()).unwrap()
        };
        assert_eq!(
            ideal_satisfaction(&mk(100, 10), &ScoringFunction::borda_dec(10)),
            900
        );
        assert_eq!(
            ideal_satisfaction(&mk(2, 2), &ScoringFunction::borda_dec(2)),
            2
        );
        assert_eq!(
            ideal_satisfaction(&mk(1000, 100), &ScoringFunction::borda_dec(100)),
            99000
        );
    }

    #[test]
    fn monroe_bounds_and_respects() {
        assert_eq!(monroe_load_bounds(100, 3), (33, 34));
        assert_eq!(monroe_load_bounds(4, 2), (2, 2));
        let rule = ElectionRule::monroe(2);
        let ok = Assignment {
            assigned: vec![Some(0), Some(0), Some(1), Some(1)],
        };
        let skewed = Assignment {
            assigned: vec![Some(0), Some(0), Some(0), Some(1)],
        };
        assert!(ok.respects(&rule, 3));
        assert!(!skewed.respects(&rule, 3));
        assert!(skewed.respects(&ElectionRule::chamberlin_courant(2), 3));
    }

    #[test]
    fn truncate_profile_cuts_ballots() {
        let p = three_voters();
        let t1 = p.truncate(1).unwrap();
        assert!(t1.rankings().iter().all(|r| r.len() == 1));
        assert_eq!(p.truncate(3).unwrap(), p);
        assert!(p.truncate(0).is_err());
        assert!(p.truncate(4).is_err());
    }
}
