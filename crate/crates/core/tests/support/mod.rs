//! Brute-force oracles that enumerate assignments directly, with no flow
//! solver and no committee enumeration.
#![allow(dead_code)]

use committee_core::model::voter_score;
use committee_core::profiles::{gen_impartial_culture, GeneratorConfig, Model};
use committee_core::{PreferenceProfile, ScoringFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Monroe,
    Cc,
}

pub fn ic(n: usize, m: usize, seed: u64) -> PreferenceProfile {
    gen_impartial_culture(&GeneratorConfig::new(Model::ImpartialCulture, n, m, seed)).unwrap()
}

/// Best total over every voter-to-alternative map that uses at most `k`
/// alternatives; under Monroe each used alternative serves between
/// `floor(n/k)` and `ceil(n/k)` voters.
pub fn exhaustive_optimum(
    p: &PreferenceProfile,
    psf: &ScoringFunction,
    rule: Rule,
    k: usize,
) -> i64 {
    let (n, m) = (p.num_voters(), p.num_alternatives());
    let (lo, hi) = match rule {
        Rule::Monroe => (n / k, n.div_ceil(k)),
        Rule::Cc => (0, n),
    };
    let mut loads = vec![0usize; m];
    let mut best = i64::MIN;
    fn go(
        v: usize,
        acc: i64,
        used: usize,
        ctx: (&PreferenceProfile, &ScoringFunction, usize, usize, usize),
        loads: &mut [usize],
        best: &mut i64,
    ) {
        let (p, psf, k, lo, hi) = ctx;
        if v == p.num_voters() {
            if loads.iter().all(|&l| l == 0 || (lo..=hi).contains(&l)) && acc > *best {
                *best = acc;
            }
            return;
        }
        for a in 0..p.num_alternatives() {
            let fresh = loads[a] == 0;
            if loads[a] == hi || (fresh && used == k) {
                continue;
            }
            loads[a] += 1;
            let s = psf.score(p.pos(v, a));
            go(v + 1, acc + s, used + usize::from(fresh), ctx, loads, best);
            loads[a] -= 1;
        }
    }
    go(0, 0, 0, (p, psf, k, lo, hi), &mut loads, &mut best);
    best
}

/// Best total for a fixed committee. With `balanced`, everyone is served and
/// each member serves between `floor(n/s)` and `min(ceil(n/s), cap)` voters;
/// otherwise each member serves at most `cap` and exactly `min(n, s*cap)`
/// voters are served.
pub fn exhaustive_fixed(
    p: &PreferenceProfile,
    psf: &ScoringFunction,
    committee: &[usize],
    cap: usize,
    balanced: bool,
) -> Option<i64> {
    let (n, s) = (p.num_voters(), committee.len());
    let (lo, hi, served) = if balanced {
        (n / s, n.div_ceil(s).min(cap), n)
    } else {
        (0, cap, n.min(s * cap))
    };
    let mut loads = vec![0usize; s];
    let mut best: Option<i64> = None;
    #[allow(clippy::too_many_arguments)]
    fn go(
        v: usize,
        acc: i64,
        count: usize,
        p: &PreferenceProfile,
        psf: &ScoringFunction,
        committee: &[usize],
        bounds: (usize, usize, usize),
        loads: &mut [usize],
        best: &mut Option<i64>,
    ) {
        let (lo, hi, served) = bounds;
        if v == p.num_voters() {
            if count == served && loads.iter().all(|&l| l >= lo) && best.is_none_or(|b| acc > b) {
                *best = Some(acc);
            }
            return;
        }
        for (j, &a) in committee.iter().enumerate() {
            if loads[j] < hi {
                loads[j] += 1;
                let s = psf.score(p.pos(v, a));
                go(
                    v + 1,
                    acc + s,
                    count + 1,
                    p,
                    psf,
                    committee,
                    bounds,
                    loads,
                    best,
                );
                loads[j] -= 1;
            }
        }
        // leave the voter out
        if p.num_voters() - v > served - count {
            let s = voter_score(p, psf, v, None);
            go(
                v + 1,
                acc + s,
                count,
                p,
                psf,
                committee,
                bounds,
                loads,
                best,
            );
        }
    }
    go(
        0,
        0,
        0,
        p,
        psf,
        committee,
        (lo, hi, served),
        &mut loads,
        &mut best,
    );
    best
}

/// All subsets of `0..m` as bit masks.
pub fn subsets(m: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..(1 << m)).map(move |mask| (0..m).filter(|&a| mask >> a & 1 == 1).collect())
}
