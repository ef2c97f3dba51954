//! Synthetic preference profiles and ranking utilities.

use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{invalid, Result};
use crate::model::PreferenceProfile;
use crate::rng::{self, Rng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    ImpartialCulture,
    Urn,
    MallowsMixture,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::ImpartialCulture => "ic",
            Model::Urn => "urn",
            Model::MallowsMixture => "mallows",
        }
    }
}

pub const DEFAULT_URN_RATIO: f64 = 0.05;
pub const DEFAULT_MIXTURE_COMPONENTS: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub model: Model,
    pub n: usize,
    pub m: usize,
    /// Weight added per draw relative to the initial weight of all orders.
    pub urn_alpha_ratio: f64,
    pub mixture_components: usize,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(model: Model, n: usize, m: usize, seed: u64) -> Self {
        Self {
            model,
            n,
            m,
            urn_alpha_ratio: DEFAULT_URN_RATIO,
            mixture_components: DEFAULT_MIXTURE_COMPONENTS,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 {
            return Err(invalid(format!(
                "need at least one voter and one alternative, got n={}, m={}",
                self.n, self.m
            )));
        }
        if !self.urn_alpha_ratio.is_finite() || self.urn_alpha_ratio < 0.0 {
            return Err(invalid(format!(
                "urn ratio must be a finite value >= 0, got {}",
                self.urn_alpha_ratio
            )));
        }
        if self.mixture_components == 0 {
            return Err(invalid("mixture needs at least one component"));
        }
        Ok(())
    }
}

pub fn generate(config: &GeneratorConfig) -> Result<PreferenceProfile> {
    match config.model {
        Model::ImpartialCulture => gen_impartial_culture(config),
        Model::Urn => gen_urn(config),
        Model::MallowsMixture => gen_mallows_mixture(config),
    }
}

/// Uniform permutation of `0..m`.
pub fn random_permutation(rng: &mut Rng, m: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    perm
}

pub fn gen_impartial_culture(config: &GeneratorConfig) -> Result<PreferenceProfile> {
    config.validate()?;
    let mut rng = rng::stream(config.seed, 0);
    let rankings = (0..config.n)
        .map(|_| random_permutation(&mut rng, config.m))
        .collect();
    PreferenceProfile::new(config.m, rankings)
}

/// Polya-Eggenberger urn. Draw `t` is fresh with probability
/// `1 / (1 + t * ratio)` and otherwise copies one earlier vote uniformly.
pub fn gen_urn(config: &GeneratorConfig) -> Result<PreferenceProfile> {
    config.validate()?;
    let mut rng = rng::stream(config.seed, 0);
    let ratio = config.urn_alpha_ratio;
    let mut votes: Vec<Vec<usize>> = Vec::with_capacity(config.n);
    for t in 0..config.n {
        let fresh = t == 0 || ratio == 0.0 || rng.gen::<f64>() < 1.0 / (1.0 + t as f64 * ratio);
        let vote = if fresh {
            random_permutation(&mut rng, config.m)
        } else {
            votes[rng.gen_range(0..t)].clone()
        };
        votes.push(vote);
    }
    PreferenceProfile::new(config.m, votes)
}

/// One draw from the Mallows model with dispersion `phi` around `center`,
/// by repeated insertion.
pub fn sample_mallows(rng: &mut Rng, center: &[usize], phi: f64) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(center.len());
    let mut weights: Vec<f64> = Vec::with_capacity(center.len());
    for (j, &alt) in center.iter().enumerate() {
        // weights[p] for slot p in 0..=j is phi^(j - p)
        weights.clear();
        let mut w = 1.0;
        for _ in 0..=j {
            weights.push(w);
            w *= phi;
        }
        weights.reverse();
        let total: f64 = weights.iter().sum();
        let mut u = rng.gen::<f64>() * total;
        let mut slot = j;
        for (p, &w) in weights.iter().enumerate() {
            if u < w {
                slot = p;
                break;
            }
            u -= w;
        }
        out.insert(slot, alt);
    }
    out
}

/// Mixture of Mallows models: weights uniform on the simplex, dispersions
/// uniform in `[0, 1)`, uniform centers.
pub fn gen_mallows_mixture(config: &GeneratorConfig) -> Result<PreferenceProfile> {
    config.validate()?;
    let mut rng = rng::stream(config.seed, 0);
    let l = config.mixture_components;
    let mut lambda: Vec<f64> = (0..l).map(|_| -libm::log(1.0 - rng.gen::<f64>())).collect();
    let total: f64 = lambda.iter().sum();
    if total > 0.0 {
        lambda.iter_mut().for_each(|x| *x /= total);
    } else {
        lambda.iter_mut().for_each(|x| *x = 1.0 / l as f64);
    }
    let phis: Vec<f64> = (0..l).map(|_| rng.gen::<f64>()).collect();
    let centers: Vec<Vec<usize>> = (0..l)
        .map(|_| random_permutation(&mut rng, config.m))
        .collect();

    let mut rankings = Vec::with_capacity(config.n);
    for _ in 0..config.n {
        let mut u = rng.gen::<f64>();
        let mut c = l - 1;
        for (i, &w) in lambda.iter().enumerate() {
            if u < w {
                c = i;
                break;
            }
            u -= w;
        }
        rankings.push(sample_mallows(&mut rng, &centers[c], phis[c]));
    }
    PreferenceProfile::new(config.m, rankings)
}

/// Number of discordant pairs between two complete rankings of the same set.
pub fn kendall_tau(r1: &[usize], r2: &[usize]) -> Result<usize> {
    if r1.len() != r2.len() {
        return Err(invalid(format!(
            "rankings of different lengths {} and {}",
            r1.len(),
            r2.len()
        )));
    }
    let m = r1.len();
    let mut pos2 = alloc::vec![usize::MAX; m];
    for (p, &a) in r2.iter().enumerate() {
        if a >= m || pos2[a] != usize::MAX {
            return Err(invalid("second ranking is not a permutation"));
        }
        pos2[a] = p;
    }
    let mut seen = alloc::vec![false; m];
    let mut seq = Vec::with_capacity(m);
    for &a in r1 {
        if a >= m || seen[a] {
            return Err(invalid("first ranking is not a permutation"));
        }
        seen[a] = true;
        seq.push(pos2[a]);
    }
    let mut count = 0;
    for i in 0..m {
        for j in i + 1..m {
            if seq[i] > seq[j] {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Every ballot cut to its first `depth` entries.
pub fn truncate_profile(profile: &PreferenceProfile, depth: usize) -> Result<PreferenceProfile> {
    profile.truncate(depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cfg(model: Model, n: usize, m: usize, seed: u64) -> GeneratorConfig {
        GeneratorConfig::new(model, n, m, seed)
    }

    #[test]
    fn generators_are_deterministic() {
        for model in [Model::ImpartialCulture, Model::Urn, Model::MallowsMixture] {
            let a = generate(&cfg(model, 50, 6, 11)).unwrap();
            let b = generate(&cfg(model, 50, 6, 11)).unwrap();
            let c = generate(&cfg(model, 50, 6, 12)).unwrap();
            assert_eq!(a, b);
            assert_ne!(a, c);
            assert!(a.is_complete());
        }
    }

    #[test]
    fn single_alternative() {
        let p = gen_impartial_culture(&cfg(Model::ImpartialCulture, 5, 1, 0)).unwrap();
        assert!(p.rankings().iter().all(|r| r == &[0]));
    }

    #[test]
    fn urn_with_zero_ratio_is_ic() {
        let mut c = cfg(Model::Urn, 40, 5, 3);
        c.urn_alpha_ratio = 0.0;
        let ic = gen_impartial_culture(&cfg(Model::ImpartialCulture, 40, 5, 3)).unwrap();
        assert_eq!(gen_urn(&c).unwrap(), ic);
    }

    #[test]
    fn bad_configs() {
        let mut c = cfg(Model::Urn, 4, 3, 0);
        c.urn_alpha_ratio = -1.0;
        assert!(gen_urn(&c).is_err());
        let mut c = cfg(Model::MallowsMixture, 4, 3, 0);
        c.mixture_components = 0;
        assert!(gen_mallows_mixture(&c).is_err());
        assert!(gen_impartial_culture(&cfg(Model::ImpartialCulture, 0, 3, 0)).is_err());
    }

    #[test]
    fn mallows_extremes() {
        let mut rng = rng::stream(5, 0);
        let center = vec![3, 1, 0, 2];
        for _ in 0..100 {
            assert_eq!(sample_mallows(&mut rng, &center, 0.0), center);
        }
        let draw = sample_mallows(&mut rng, &center, 1.0);
        let mut sorted = draw.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2, 3]);
    }

    #[test]
    fn kendall_tau_values() {
        assert_eq!(kendall_tau(&[0, 1, 2], &[0, 1, 2]).unwrap(), 0);
        assert_eq!(kendall_tau(&[0, 1, 2], &[2, 1, 0]).unwrap(), 3);
        assert_eq!(kendall_tau(&[0, 1, 2, 3], &[3, 2, 1, 0]).unwrap(), 6);
        assert_eq!(kendall_tau(&[0, 1, 2], &[1, 0, 2]).unwrap(), 1);
        assert!(kendall_tau(&[0, 1], &[0, 1, 2]).is_err());
        assert!(kendall_tau(&[0, 0, 1], &[0, 1, 2]).is_err());
    }

    #[test]
    fn truncation() {
        let p = gen_impartial_culture(&cfg(Model::ImpartialCulture, 10, 5, 1)).unwrap();
        assert_eq!(truncate_profile(&p, 5).unwrap(), p);
        let t = truncate_profile(&p, 1).unwrap();
        assert!(t.rankings().iter().all(|r| r.len() == 1));
        assert!(truncate_profile(&p, 0).is_err());
    }
}
