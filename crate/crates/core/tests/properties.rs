mod support;

use committee_core::bounds::{cc_p_bound, monroe_greedy_bound};
use committee_core::cc::{cc_algo_c, cc_algo_gm, cc_algo_p, cc_algo_r};
use committee_core::exact::brute_force_winners;
use committee_core::model::{evaluate, Metric};
use committee_core::monroe::{algo_a, algo_b, algo_c, algo_gm, algo_r};
use committee_core::{
    optimal_assignment_capacitated, optimal_assignment_cc, ElectionRule, ScoringFunction,
};
use proptest::prelude::*;
use support::{exhaustive_fixed, exhaustive_optimum, ic, subsets, Rule};

const ONE_MINUS_INV_E: f64 = 1.0 - 0.367_879_441_171_442_33;

fn small() -> impl Strategy<Value = (usize, usize, usize, u64)> {
    (1usize..=3, 2usize..=6, any::<u64>()).prop_flat_map(|(k, m, seed)| {
        let k = k.min(m);
        (1usize..=8 / k).prop_map(move |mult| (k * mult, m, k, seed))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn brute_force_matches_assignment_enumeration((n, m, k, seed) in small()) {
        let p = ic(n, m, seed);
        let psf = ScoringFunction::borda_dec(m);
        let monroe = brute_force_winners(&p, &psf, &ElectionRule::monroe(k)).unwrap();
        let cc = brute_force_winners(&p, &psf, &ElectionRule::chamberlin_courant(k)).unwrap();
        prop_assert_eq!(monroe.l1(), exhaustive_optimum(&p, &psf, Rule::Monroe, k));
        prop_assert_eq!(cc.l1(), exhaustive_optimum(&p, &psf, Rule::Cc, k));
        prop_assert!(cc.l1() >= monroe.l1());
    }

    #[test]
    fn flow_matches_enumeration(
        n in 1usize..=8,
        m in 2usize..=6,
        size in 1usize..=4,
        cap in 1usize..=8,
        depth in 1usize..=6,
        seed in any::<u64>(),
    ) {
        let size = size.min(m);
        let p = ic(n, m, seed).truncate(depth.min(m)).unwrap();
        let psf = ScoringFunction::truncated(m, depth.min(m)).unwrap();
        let committee: Vec<usize> = (0..size).map(|i| (i * 7 + seed as usize) % m).collect();
        let mut committee = committee;
        committee.sort_unstable();
        committee.dedup();
        for balanced in [false, true] {
            let expected = exhaustive_fixed(&p, &psf, &committee, cap, balanced);
            let got = optimal_assignment_capacitated(&p, &psf, &committee, cap, balanced);
            match expected {
                Some(value) => {
                    let a = got.unwrap();
                    prop_assert_eq!(evaluate(&p, &psf, &a, Metric::L1).unwrap(), value);
                    let loads = a.loads(m);
                    prop_assert!(committee.iter().all(|&c| loads[c] <= cap));
                }
                None => prop_assert!(got.is_err()),
            }
        }
    }

    #[test]
    fn chain_dominance_and_guarantees(
        k in 3usize..=4,
        m in 6usize..=9,
        mult in 1usize..=4,
        seed in any::<u64>(),
    ) {
        let n = k * mult;
        let p = ic(n, m, seed);
        let psf = ScoringFunction::borda_dec(m);
        let opt = brute_force_winners(&p, &psf, &ElectionRule::monroe(k)).unwrap().l1();
        let a = algo_a(&p, &psf, k).unwrap().l1();
        let b = algo_b(&p, &psf, k).unwrap().l1();
        let c = algo_c(&p, &psf, k, 3).unwrap().l1();
        let gm = algo_gm(&p, &psf, k).unwrap().l1();
        prop_assert!(a <= b && b <= c && c <= opt);
        prop_assert!(a as f64 >= monroe_greedy_bound(m, k).unwrap() * (n * (m - 1)) as f64 - 1e-9);
        prop_assert!(gm as f64 >= ONE_MINUS_INV_E * opt as f64);
        prop_assert!(gm <= opt);

        let cc_opt = brute_force_winners(&p, &psf, &ElectionRule::chamberlin_courant(k)).unwrap().l1();
        let cc_gm = cc_algo_gm(&p, &psf, k).unwrap().l1();
        prop_assert!(cc_gm as f64 >= ONE_MINUS_INV_E * cc_opt as f64);
        prop_assert_eq!(cc_algo_c(&p, &psf, k, 1).unwrap().l1(), cc_gm);
        prop_assert!(cc_algo_c(&p, &psf, k, 4).unwrap().l1() <= cc_opt);
        let cc_p = cc_algo_p(&p, &psf, k, None).unwrap().l1();
        prop_assert!(cc_p as f64 >= cc_p_bound(k).unwrap() * (n * (m - 1)) as f64 - 1e-9);
    }

    #[test]
    fn submodular_and_monotone(n in 1usize..=6, m in 2usize..=5, k in 1usize..=5, seed in any::<u64>()) {
        let k = k.min(m).min(n);
        let p = ic(n, m, seed);
        let psf = ScoringFunction::borda_dec(m);
        let cap = n.div_ceil(k);
        let z = |s: &[usize]| -> i64 {
            if s.is_empty() {
                return 0;
            }
            let a = optimal_assignment_capacitated(&p, &psf, s, cap, false).unwrap();
            evaluate(&p, &psf, &a, Metric::L1).unwrap()
        };
        let all: Vec<Vec<usize>> = subsets(m).collect();
        let values: Vec<i64> = all.iter().map(|s| z(s)).collect();
        for t in 0..all.len() {
            for s in 0..all.len() {
                if s & t != s {
                    continue;
                }
                prop_assert!(values[s] <= values[t]);
                for a in (0..m).filter(|&a| t >> a & 1 == 0) {
                    let gain_s = values[s | 1 << a] - values[s];
                    let gain_t = values[t | 1 << a] - values[t];
                    prop_assert!(gain_s >= gain_t, "S={:?} T={:?} a={}", all[s], all[t], a);
                }
            }
        }
    }

    #[test]
    fn additivity_and_range(n in 1usize..=20, m in 2usize..=8, seed in any::<u64>()) {
        let p = ic(n, m, seed);
        let psf = ScoringFunction::borda_dec(m);
        let committee: Vec<usize> = (0..m).step_by(2).collect();
        let a = optimal_assignment_cc(&p, &psf, &committee).unwrap();
        let total = evaluate(&p, &psf, &a, Metric::L1).unwrap();
        let sum: i64 = (0..n)
            .map(|v| psf.score(p.pos(v, a.assigned[v].unwrap())))
            .sum();
        prop_assert_eq!(total, sum);
        prop_assert!((0..=(n * (m - 1)) as i64).contains(&total));
        let lmin = evaluate(&p, &psf, &a, Metric::LMin).unwrap();
        prop_assert!(lmin * n as i64 <= total);
    }

    #[test]
    fn truncated_scoring_matches_zeroed_positions(n in 1usize..=15, m in 2usize..=8, depth in 1usize..=8, seed in any::<u64>()) {
        let depth = depth.min(m);
        let p = ic(n, m, seed);
        let t = p.truncate(depth).unwrap();
        let psf_t = ScoringFunction::truncated(m, depth).unwrap();
        let committee = [0usize, m - 1];
        let a = optimal_assignment_cc(&p, &ScoringFunction::borda_dec(m), &committee).unwrap();
        let on_truncated = evaluate(&t, &psf_t, &a, Metric::L1).unwrap();
        let zeroed: i64 = (0..n)
            .map(|v| {
                let pos = p.pos(v, a.assigned[v].unwrap());
                if pos <= depth { (m - pos) as i64 } else { 0 }
            })
            .sum();
        prop_assert_eq!(on_truncated, zeroed);
    }

    #[test]
    fn deterministic(n in 3usize..=20, m in 3usize..=8, seed in any::<u64>()) {
        let p = ic(n, m, seed);
        let psf = ScoringFunction::borda_dec(m);
        let k = 3;
        prop_assert_eq!(algo_a(&p, &psf, k).unwrap(), algo_a(&p, &psf, k).unwrap());
        prop_assert_eq!(algo_c(&p, &psf, k, 4).unwrap(), algo_c(&p, &psf, k, 4).unwrap());
        prop_assert_eq!(algo_gm(&p, &psf, k).unwrap(), algo_gm(&p, &psf, k).unwrap());
        prop_assert_eq!(algo_r(&p, &psf, k, 5, seed).unwrap(), algo_r(&p, &psf, k, 5, seed).unwrap());
        prop_assert_eq!(cc_algo_r(&p, &psf, k, 5, seed).unwrap(), cc_algo_r(&p, &psf, k, 5, seed).unwrap());
    }
}
