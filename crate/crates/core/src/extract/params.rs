//! Derived scalars for the two regimes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path::PathSearch;
use crate::sample::{split_exposure, ExposureSplit};

/// Floor a size that is an exact integer in exact arithmetic but may land
/// a hair below it in floating point (`0.95 * 10000`).
pub(crate) fn floor_size(x: f64) -> usize {
    (x + 1e-9).floor().max(0.0) as usize
}

/// Knobs shared by both extractors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtractConfig {
    pub path: PathSearch,
    /// Dense first-round probability is `min(p_first_fraction * p, p_first_constant / |V'|)`.
    pub p_first_fraction: f64,
    pub p_first_constant: f64,
}

impl Default for ExtractConfig {
    fn default() -> Self {
        Self {
            path: PathSearch::default(),
            p_first_fraction: 0.1,
            p_first_constant: 20.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DenseParams {
    pub n: usize,
    pub p: f64,
    pub eps: f64,
    /// Target order `(1-ε)·sqrt(n²p / ln(np))` before flooring.
    pub k_real: f64,
    pub k: usize,
    /// Candidate count `(1+ε/4)·k`.
    pub k_prime: usize,
    /// `|V'| = (1-ε/4)·n`; `V'` is the vertex prefix `0..n_prime`.
    pub n_prime: usize,
    /// Candidate branch-set size `(1-ε/4)·n'/k'`.
    pub t: usize,
    pub split: ExposureSplit,
    /// `1/(1-p)`, the base of the constant-p form.
    pub b: f64,
}

pub fn dense_parameters(n: usize, p: f64, eps: f64, config: &ExtractConfig) -> Result<DenseParams> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!("eps = {eps} must lie in (0, 1)")));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("p = {p} must lie in (0, 1)")));
    }
    let np = n as f64 * p;
    if np <= std::f64::consts::E {
        return Err(Error::Regime(format!("np = {np} must exceed e so that ln(np) > 1")));
    }
    let nf = n as f64;
    let k_real = (1.0 - eps) * (nf * nf * p / np.ln()).sqrt();
    let k = floor_size(k_real);
    if k < 2 {
        return Err(Error::Degenerate(format!("target order {k_real:.3} is below 2")));
    }
    let k_prime_real = (1.0 + eps / 4.0) * k_real;
    let n_prime_real = (1.0 - eps / 4.0) * nf;
    let k_prime = floor_size(k_prime_real);
    let n_prime = floor_size(n_prime_real);
    let t = floor_size((1.0 - eps / 4.0) * n_prime_real / k_prime_real);
    if t < 1 {
        return Err(Error::Degenerate("candidate branch sets would be empty".into()));
    }
    let p_first = (config.p_first_fraction * p).min(config.p_first_constant / n_prime as f64);
    let split = split_exposure(p, p_first.max(0.0))?;

    debug_assert!(k <= k_prime);
    debug_assert!(k_prime * t <= floor_size((1.0 - eps / 4.0) * n_prime as f64) + 1);
    Ok(DenseParams {
        n,
        p,
        eps,
        k_real,
        k,
        k_prime,
        n_prime,
        t,
        split,
        b: 1.0 / (1.0 - p),
    })
}

impl DenseParams {
    /// Ladder constants: `|Q_i| = ε²n / (2^i ln(np))`, pruning
    /// coefficient `ε^{3/2}`.
    pub fn ladder(&self, k_prime: usize) -> LadderSpec {
        let np = self.n as f64 * self.p;
        LadderSpec {
            n: self.n,
            k_prime,
            q_scale: self.eps * self.eps * self.n as f64 / np.ln(),
            prune_coeff: self.eps.powf(1.5),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SparseParams {
    pub n: usize,
    pub c: f64,
    pub c1: f64,
    pub c2: f64,
    pub delta: f64,
    pub alpha: f64,
    pub k: usize,
    pub k_prime: usize,
    pub t: usize,
}

pub fn sparse_parameters(n: usize, c: f64, delta: f64, alpha: f64) -> Result<SparseParams> {
    if c.is_nan() || c <= 1.0 {
        return Err(Error::Subcritical(c));
    }
    if !(delta > 0.0 && alpha > 0.0) {
        return Err(Error::Domain(format!("delta = {delta} and alpha = {alpha} must be positive")));
    }
    let nf = n as f64;
    if c >= nf {
        return Err(Error::Domain(format!("c = {c} must be below n = {n}")));
    }
    let c1 = (c + 1.0) / 2.0;
    let c2 = (c - c1) / (1.0 - c1 / nf);
    let k = floor_size(delta * nf.sqrt());
    let k_prime = 2 * k;
    let t = floor_size(alpha * nf.sqrt() / (2.0 * delta));
    if k == 0 || t == 0 {
        return Err(Error::Degenerate(format!(
            "k = {k}, t = {t} at n = {n}, delta = {delta}, alpha = {alpha}"
        )));
    }
    if (k_prime * t) as f64 > alpha * nf + 1e-9 {
        return Err(Error::Precondition(format!("k'·t = {} exceeds αn", k_prime * t)));
    }
    Ok(SparseParams {
        n,
        c,
        c1,
        c2,
        delta,
        alpha,
        k,
        k_prime,
        t,
    })
}

impl SparseParams {
    /// Ladder constants: `|Q_i| = δ³αn / 2^i`, pruning coefficient `δ^{1/2}`.
    pub fn ladder(&self, k_prime: usize) -> LadderSpec {
        LadderSpec {
            n: self.n,
            k_prime,
            q_scale: self.delta.powi(3) * self.alpha * self.n as f64,
            prune_coeff: self.delta.sqrt(),
        }
    }
}

/// Regime-specific constants consumed by stage planning.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderSpec {
    pub n: usize,
    pub k_prime: usize,
    /// `|Q_i| = q_scale / 2^i` before capacity rescaling.
    pub q_scale: f64,
    /// Denominator coefficient of the pruning threshold.
    pub prune_coeff: f64,
}

impl LadderSpec {
    /// `Δ_{i-1} = 8 E(U₀) / (coeff · 4^{i-1} · k')` for stage `i ≥ 1`.
    pub fn prune_threshold(&self, stage: usize, expected_u0: f64) -> f64 {
        8.0 * expected_u0 / (self.prune_coeff * 4f64.powi(stage as i32 - 1) * self.k_prime as f64)
    }
}

/// `E(U₀) = C(k', 2) · (1 - p'')^{t²}`, evaluated in log space.
pub fn expected_unjoined(k_prime: usize, t: usize, p_second: f64) -> f64 {
    let pairs = (k_prime * k_prime.saturating_sub(1)) as f64 / 2.0;
    let tt = (t * t) as f64;
    pairs * (tt * (-p_second).ln_1p()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_example() {
        let d = dense_parameters(10_000, 0.01, 0.2, &ExtractConfig::default()).unwrap();
        assert_eq!((d.k, d.k_prime, d.n_prime, d.t), (372, 391, 9500, 23));
        assert!((d.k_real - 372.792).abs() < 1e-3);
        assert!((d.b - 1.0 / 0.99).abs() < 1e-15);
        assert!(d.k_prime * d.t <= 9025);
        assert!((d.split.combined() - 0.01).abs() < 1e-14);
    }

    #[test]
    fn dense_unscaled_order() {
        // eps -> 0: k₀ = floor(sqrt(10⁶ / ln 100)) = floor(465.990) = 465.
        let d = dense_parameters(10_000, 0.01, 1e-12, &ExtractConfig::default()).unwrap();
        assert_eq!(d.k, 465);
    }

    #[test]
    fn dense_regime_boundary() {
        let p = std::f64::consts::E / 10_000.0;
        assert!(matches!(
            dense_parameters(10_000, p, 0.2, &ExtractConfig::default()),
            Err(Error::Regime(_))
        ));
        assert!(dense_parameters(10_000, 0.01, 1.0, &ExtractConfig::default()).is_err());
    }

    #[test]
    fn dense_first_round_choice() {
        let d = dense_parameters(20_000, 0.02, 0.2, &ExtractConfig::default()).unwrap();
        assert!((d.split.p_first - 20.0 / 19_000.0).abs() < 1e-15);
        let d = dense_parameters(20_000, 0.002, 0.2, &ExtractConfig::default()).unwrap();
        assert!((d.split.p_first - 0.0002).abs() < 1e-15);
    }

    #[test]
    fn sparse_examples() {
        let s = sparse_parameters(10_000, 4.0, 0.1, 0.4).unwrap();
        assert_eq!(s.c1, 2.5);
        assert!((s.c2 - 1.5 / (1.0 - 2.5e-4)).abs() < 1e-12);
        assert!((s.c2 - 1.500_375_093_773_443_4).abs() < 1e-12);
        assert_eq!((s.k, s.k_prime, s.t), (10, 20, 200));

        let s = sparse_parameters(1_000_000, 2.0, 0.05, 0.3).unwrap();
        assert_eq!((s.k, s.k_prime, s.t, s.c1), (50, 100, 3000, 1.5));
        assert!(s.k_prime * s.t <= 300_000);
    }

    #[test]
    fn sparse_subcritical() {
        assert!(matches!(sparse_parameters(1000, 1.0, 0.1, 0.3), Err(Error::Subcritical(_))));
        assert!(matches!(sparse_parameters(1000, 0.5, 0.1, 0.3), Err(Error::Subcritical(_))));
    }

    #[test]
    fn expected_unjoined_matches_direct_power() {
        let direct = 190.0 * (1.0f64 - 0.01).powi(400);
        assert!((expected_unjoined(20, 20, 0.01) - direct).abs() < 1e-9 * direct);
        assert_eq!(expected_unjoined(1, 5, 0.3), 0.0);
    }
}
