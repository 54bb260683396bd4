//! First-moment upper bound on the number of `K_k`-minor families.
//!
//! For a family of `k` disjoint sets covering `n - s` vertices, the
//! expected number of such families that are all connected and pairwise
//! adjacent in `G(n, p)` is at most
//!
//! ```text
//! C(n, k) · e^{2n} (np)^{n-s} · exp(-k ln p - C(k, 2)·(1-p)^{(n/k)²})
//! ```
//!
//! where `C(n, k)` counts the size vectors, `(np)^{n-s} p^{-k}` the
//! spanning trees inside the sets, and the last factor the chance that no
//! pair of sets misses all edges when the sizes are as equal as possible.
//! A negative logarithm means `K_k` minors are unlikely.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Negative,
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub p: f64,
    pub k: usize,
    /// Natural log of the bound, maximized over `s`.
    pub log_expected_count: f64,
    /// Number of vertices left out of the family at the maximum.
    pub s_argmax: usize,
    pub verdict: Verdict,
}

fn ln_choose(n: usize, k: usize) -> f64 {
    let lg = |x: usize| libm::lgamma(x as f64 + 1.0);
    lg(n) - lg(k) - lg(n - k)
}

pub fn first_moment_log_bound(n: usize, p: f64, k: usize) -> Result<BoundReport> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("p = {p} must lie in (0, 1)")));
    }
    if k < 2 || k > n {
        return Err(Error::Domain(format!("k = {k} must lie in [2, n = {n}]")));
    }
    let (nf, kf) = (n as f64, k as f64);
    let ln_np = (nf * p).ln();
    let pairs = kf * (kf - 1.0) / 2.0;
    let miss = ((nf / kf).powi(2) * (-p).ln_1p()).exp();
    let fixed = ln_choose(n, k) + 2.0 * nf - kf * p.ln() - pairs * miss;

    // The s-dependent term is linear, but the scan is cheap and keeps the
    // maximization explicit.
    let (s_argmax, best) = (0..=n - k)
        .map(|s| (s, (nf - s as f64) * ln_np))
        .fold((0, f64::NEG_INFINITY), |acc, (s, v)| if v > acc.1 { (s, v) } else { acc });
    let log_expected_count = fixed + best;
    Ok(BoundReport {
        n,
        p,
        k,
        log_expected_count,
        s_argmax,
        verdict: if log_expected_count < 0.0 { Verdict::Negative } else { Verdict::Positive },
    })
}

/// Smallest `k` in `k_min..=n` whose bound is negative.
pub fn first_negative_order(n: usize, p: f64, k_min: usize) -> Result<Option<usize>> {
    for k in k_min.max(2)..=n {
        if first_moment_log_bound(n, p, k)?.verdict == Verdict::Negative {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_order_is_negative() {
        let r = first_moment_log_bound(200, 0.5, 200).unwrap();
        assert_eq!(r.s_argmax, 0);
        assert_eq!(r.verdict, Verdict::Negative);
        // -C(200,2)/2 dominates the positive terms.
        assert!(r.log_expected_count < -9950.0 + 2000.0);
        assert!(r.log_expected_count.is_finite());
    }

    #[test]
    fn frozen_values() {
        // Independent evaluation in double precision.
        let r = first_moment_log_bound(200, 0.5, 200).unwrap();
        assert!((r.log_expected_count - -8_490.336_526_690_393).abs() < 1e-6);
        let r = first_moment_log_bound(500, 0.5, 281).unwrap();
        assert!((r.log_expected_count - -87.756_223_343_880_27).abs() < 1e-6);
        let r = first_moment_log_bound(500, 0.5, 280).unwrap();
        assert!((r.log_expected_count - 10.788_560_086_447_433).abs() < 1e-6);
    }

    #[test]
    fn sparse_side_moves_argmax() {
        // np < 1 makes the free vertices pay, so s goes to its maximum.
        let r = first_moment_log_bound(100, 0.005, 10).unwrap();
        assert_eq!(r.s_argmax, 90);
    }

    #[test]
    fn crossing_near_reference_scale() {
        for (n, expected) in [(200, 129), (500, 281)] {
            let k = first_negative_order(n, 0.5, 2).unwrap().unwrap();
            assert_eq!(k, expected);
            let reference = n as f64 / (n as f64).log2().sqrt();
            assert!((k as f64) < 2.0 * reference && (k as f64) > reference / 2.0);
        }
    }

    #[test]
    fn unimodal_in_k() {
        // The bound rises while C(n, k) grows faster than the pair term,
        // then falls for good.
        let values: Vec<f64> = (2..=200)
            .map(|k| first_moment_log_bound(200, 0.5, k).unwrap().log_expected_count)
            .collect();
        let peak = values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i + 2)
            .unwrap();
        assert_eq!(peak, 69);
        assert!(values[peak - 2..].windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn domain_errors() {
        assert!(first_moment_log_bound(10, 0.0, 3).is_err());
        assert!(first_moment_log_bound(10, 1.0, 3).is_err());
        assert!(first_moment_log_bound(10, 0.5, 11).is_err());
        assert!(first_moment_log_bound(10, 0.5, 1).is_err());
    }
}
