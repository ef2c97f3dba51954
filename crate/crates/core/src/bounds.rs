//! Closed-form approximation guarantees and the special functions they use.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{invalid, Result};

/// A named bound value. `raw` is the formula as evaluated; `value` is clamped
/// to `[0, 1]` when the quantity is a ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub name: &'static str,
    pub params: Vec<(&'static str, f64)>,
    pub raw: f64,
    pub value: f64,
}

impl BoundReport {
    pub fn ratio(name: &'static str, params: Vec<(&'static str, f64)>, raw: f64) -> Self {
        Self {
            name,
            params,
            raw,
            value: raw.clamp(0.0, 1.0),
        }
    }

    pub fn quantity(name: &'static str, params: Vec<(&'static str, f64)>, raw: f64) -> Self {
        Self {
            name,
            params,
            raw,
            value: raw,
        }
    }
}

/// `H_k = 1 + 1/2 + ... + 1/k`, exactly.
pub fn harmonic(k: usize) -> Result<BigRational> {
    if k == 0 {
        return Err(invalid("harmonic number needs k >= 1"));
    }
    let mut acc = BigRational::zero();
    for i in 1..=k {
        acc += BigRational::new(BigInt::from(1), BigInt::from(i));
    }
    Ok(acc)
}

pub fn harmonic_f64(k: usize) -> f64 {
    (1..=k).rev().map(|i| 1.0 / i as f64).sum()
}

/// Principal branch of Lambert's W on `[0, inf)`: the `w` with `w e^w = y`.
///
/// Newton's method started at `ln(1 + y)`, which lies above the root, so the
/// iterates decrease monotonically; a step is halved if it would overshoot
/// below zero. Stops once the residual is within `1e-12 * max(1, y)` or
/// the iterate stops moving.
pub fn lambert_w(y: f64) -> Result<f64> {
    if !y.is_finite() || y < 0.0 {
        return Err(invalid(format!(
            "lambert_w is defined here for finite y >= 0, got {y}"
        )));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let tol = 1e-12 * y.max(1.0);
    let mut w = libm::log1p(y);
    for _ in 0..200 {
        let ew = libm::exp(w);
        let f = w * ew - y;
        if libm::fabs(f) <= tol {
            break;
        }
        let mut step = f / (ew * (w + 1.0));
        while w - step < 0.0 {
            step *= 0.5;
        }
        let next = w - step;
        if next == w {
            break;
        }
        w = next;
    }
    Ok(w)
}

/// Guarantee of the greedy Monroe algorithm relative to `n(m-1)`:
/// `1 - (K-1)/(2(m-1)) - H_K/K`.
pub fn monroe_greedy_bound(m: usize, k: usize) -> Result<f64> {
    if k == 0 || m < 2 {
        return Err(invalid(format!("need K >= 1 and m >= 2, got m={m}, K={k}")));
    }
    let (mf, kf) = (m as f64, k as f64);
    Ok(1.0 - (kf - 1.0) / (2.0 * (mf - 1.0)) - harmonic_f64(k) / kf)
}

/// Guarantee of the greedy Monroe algorithm when only the top `p` positions
/// of every ballot are known. The piecewise per-round estimate is evaluated
/// with real-valued guards; the `n/K` factor cancels against `n(m-1)`.
pub fn monroe_truncated_bound(m: usize, k: usize, p: usize) -> Result<f64> {
    if k == 0 || m < 2 || k > m {
        return Err(invalid(format!(
            "need 1 <= K <= m and m >= 2, got m={m}, K={k}"
        )));
    }
    if p == 0 || p > m {
        return Err(invalid(format!("known positions {p} outside 1..={m}")));
    }
    let (mf, kf, pf) = (m as f64, k as f64, p as f64);
    let mut total = 0.0;
    for i in 0..k {
        let i = i as f64;
        let reach = i + (mf - i) / (kf - i);
        let round = if reach <= pf {
            mf - i - (mf - i) / (kf - i)
        } else if (2.0 * pf - mf) >= i && i >= (kf - 2.0) {
            (kf - i) * (mf - i) / 4.0
        } else {
            (mf - pf) * (kf - i) * (pf - i) / (mf - i)
        };
        total += round.max(0.0) / kf;
    }
    Ok(total / (mf - 1.0))
}

/// Expected ratio of one uniform sample of `K` alternatives under Monroe:
/// `1/2 (1 + K/m - K^2/(m^2-m) + K^3/(m^3-m^2))`.
pub fn sampling_expected_ratio(m: usize, k: usize) -> Result<f64> {
    if m < 2 || k > m {
        return Err(invalid(format!("need m >= 2 and K <= m, got m={m}, K={k}")));
    }
    let (mf, kf) = (m as f64, k as f64);
    Ok(0.5 * (1.0 + kf / mf - kf * kf / (mf * mf - mf) + kf * kf * kf / (mf * mf * mf - mf * mf)))
}

/// Upper bound `exp(-K eps^2 / 128)` on the probability that one sample
/// deviates from its expectation by more than `eps`; valid for `K >= 8`.
pub fn sampling_failure_prob(k: usize, epsilon: f64) -> Result<f64> {
    if k < 8 {
        return Err(invalid(format!(
            "the deviation bound holds for K >= 8, got {k}"
        )));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(invalid("epsilon must be positive"));
    }
    Ok(libm::exp(-(k as f64) * epsilon * epsilon / 128.0))
}

/// Number of samples `ceil(-512 ln(1 - lambda) / (K eps^2))`.
pub fn ar_sample_count(k: usize, epsilon: f64, lambda: f64) -> Result<usize> {
    if k == 0 {
        return Err(invalid("K must be positive"));
    }
    check_open_unit("epsilon", epsilon)?;
    check_open_unit("lambda", lambda)?;
    let count = -512.0 * libm::log(1.0 - lambda) / (k as f64 * epsilon * epsilon);
    Ok((libm::ceil(count) as usize).max(1))
}

/// The committee fraction `x = K/m` where greedy (`1 - x/2`) and sampling
/// (`(1 + x - x^2 + x^3)/2`) guarantees meet, and the common value there.
pub fn sampling_crossover() -> (f64, f64) {
    // root of x^3 - x^2 + 2x - 1 on [0, 1]
    let g = |x: f64| x * x * x - x * x + 2.0 * x - 1.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    (x, 1.0 - x / 2.0)
}

/// Guarantee of the coverage greedy for Chamberlin-Courant: `1 - 2 w(K)/K`.
pub fn cc_p_bound(k: usize) -> Result<f64> {
    if k == 0 {
        return Err(invalid("K must be positive"));
    }
    Ok(1.0 - 2.0 * lambert_w(k as f64)? / k as f64)
}

/// Default coverage window `ceil(m w(K) / K)`.
pub fn cc_p_window(m: usize, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(invalid("K must be positive"));
    }
    let x = libm::ceil(m as f64 * lambert_w(k as f64)? / k as f64) as usize;
    Ok(x.clamp(1, m.max(1)))
}

/// Guarantee with only `Q` known positions: `(m-Q)/(m-1) (1 - e^{-QK/m})`,
/// valid while `Q <= m w(K)/K`.
pub fn cc_truncated_bound(m: usize, k: usize, q: usize) -> Result<f64> {
    if k == 0 || m < 2 {
        return Err(invalid(format!("need K >= 1 and m >= 2, got m={m}, K={k}")));
    }
    let limit = m as f64 * lambert_w(k as f64)? / k as f64;
    if q == 0 || q as f64 > limit {
        return Err(invalid(format!(
            "known positions Q={q} must lie in 1..=m w(K)/K = {limit:.3}"
        )));
    }
    let (mf, kf, qf) = (m as f64, k as f64, q as f64);
    Ok((mf - qf) / (mf - 1.0) * (1.0 - libm::exp(-qf * kf / mf)))
}

/// Coverage window `ceil(-m ln(delta) / K)` for the delta-relaxed objective,
/// clamped to `1..=m`.
pub fn cc_delta_x(m: usize, k: usize, delta: f64) -> Result<usize> {
    if k == 0 {
        return Err(invalid("K must be positive"));
    }
    check_open_unit("delta", delta)?;
    let x = -(m as f64) * libm::log(delta) / k as f64;
    // absorb rounding noise such as m * K / K landing just above an integer
    let x = libm::ceil(x - 1e-9) as usize;
    Ok(x.clamp(1, m.max(1)))
}

/// Guaranteed delta-relaxed egalitarian level `(1 + ln(delta)/K)(m - 1)`.
pub fn cc_delta_bound(m: usize, k: usize, delta: f64) -> Result<f64> {
    check_open_unit("delta", delta)?;
    if k == 0 {
        return Err(invalid("K must be positive"));
    }
    Ok((1.0 + libm::log(delta) / k as f64) * (m as f64 - 1.0))
}

pub(crate) fn check_open_unit(name: &str, value: f64) -> Result<()> {
    if !(value > 0.0 && value < 1.0) {
        return Err(invalid(format!("{name} must lie in (0, 1), got {value}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_values() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(harmonic(1).unwrap(), r(1, 1));
        assert_eq!(harmonic(2).unwrap(), r(3, 2));
        assert_eq!(harmonic(3).unwrap(), r(11, 6));
        assert!(harmonic(0).is_err());
        assert!((harmonic_f64(3) - 11.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn lambert_w_values() {
        assert_eq!(lambert_w(0.0).unwrap(), 0.0);
        assert!((lambert_w(core::f64::consts::E).unwrap() - 1.0).abs() < 1e-12);
        assert!((lambert_w(1.0).unwrap() - 0.567143).abs() < 1e-6);
        assert!(lambert_w(-1.0).is_err());
        assert!(lambert_w(f64::NAN).is_err());
    }

    #[test]
    fn lambert_w_residual_on_grid() {
        let mut y = 0.0;
        while y <= 1e6 {
            let w = lambert_w(y).unwrap();
            let residual = (w * libm::exp(w) - y).abs();
            assert!(residual <= 1e-12 * y.max(1.0), "y={y} residual={residual}");
            y = if y < 10.0 { y + 0.01 } else { y * 1.01 };
        }
    }

    #[test]
    fn greedy_bound_small_case() {
        // 1 - 2/18 - (11/6)/3
        let b = monroe_greedy_bound(10, 3).unwrap();
        assert!((b - (1.0 - 2.0 / 18.0 - 11.0 / 18.0)).abs() < 1e-12);
        assert!((b - 0.2778).abs() < 1e-4);
        // degenerate at K = 1
        assert!(monroe_greedy_bound(1000, 1).unwrap().abs() < 1e-12);
    }

    #[test]
    fn truncated_full_knowledge_dominates_closed_form() {
        for &(m, k) in &[(10usize, 3usize), (20, 4), (100, 10), (6000, 460)] {
            let full = monroe_truncated_bound(m, k, m).unwrap();
            let closed = monroe_greedy_bound(m, k).unwrap();
            assert!(full >= closed - 1e-12, "m={m} k={k}: {full} < {closed}");
        }
        let full = monroe_truncated_bound(6000, 460, 6000).unwrap();
        let closed = monroe_greedy_bound(6000, 460).unwrap();
        assert!((full - closed).abs() < 2e-3);
    }

    #[test]
    fn truncated_bound_range() {
        for p in 1..=100 {
            let b = monroe_truncated_bound(100, 10, p).unwrap();
            assert!((0.0..=1.0).contains(&b), "p={p}: {b}");
        }
        assert!(monroe_truncated_bound(100, 10, 1).unwrap() < 0.05);
        // the printed third case is not monotone in P past m/2
        let b = monroe_truncated_bound(6000, 460, 522).unwrap();
        assert!((b - 0.8999).abs() < 1e-3, "{b}");
        assert!(monroe_truncated_bound(10, 3, 0).is_err());
        assert!(monroe_truncated_bound(10, 3, 11).is_err());
    }

    #[test]
    fn sampling_quantities() {
        let r = sampling_expected_ratio(10, 6).unwrap();
        let expected = 0.5 * (1.0 + 0.6 - 36.0 / 90.0 + 216.0 / 900.0);
        assert!((r - expected).abs() < 1e-12);
        assert!((sampling_failure_prob(128, 1.0).unwrap() - (-1.0f64).exp()).abs() < 1e-15);
        assert!(sampling_failure_prob(7, 1.0).is_err());
        assert_eq!(ar_sample_count(100, 0.2, 0.9).unwrap(), 295);
    }

    #[test]
    fn crossover_point() {
        let (x, ratio) = sampling_crossover();
        assert!((x * x * x - x * x + 2.0 * x - 1.0).abs() < 1e-12);
        assert!((0.565..=0.575).contains(&x));
        assert!((0.71..=0.72).contains(&ratio));
        let sampled = sampling_expected_ratio(100_000, (0.57 * 100_000.0) as usize).unwrap();
        assert!((sampled - 0.715).abs() < 0.005);
    }

    #[test]
    fn cc_bounds() {
        assert!(cc_truncated_bound(6000, 460, 30).unwrap() >= 0.89);
        assert!(cc_truncated_bound(6000, 460, 1000).is_err());
        let mut prev = cc_p_bound(3).unwrap();
        for k in 4..2000 {
            let b = cc_p_bound(k).unwrap();
            assert!(b >= prev);
            prev = b;
        }
        assert!(prev > 0.99 - 0.01);
        assert_eq!(cc_delta_x(100, 10, 0.1).unwrap(), 24);
        assert_eq!(cc_delta_x(10, 4, (-4.0f64).exp()).unwrap(), 10);
        assert_eq!(cc_delta_x(10, 4, 0.999_999).unwrap(), 1);
        assert!(cc_delta_x(10, 4, 1.0).is_err());
        assert_eq!(cc_p_window(3, 1).unwrap(), 2);
    }
}
