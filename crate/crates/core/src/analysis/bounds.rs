//! Closed-form order bounds.

use crate::error::{Error, Result};

fn check_dense(n: usize, p: f64, eps: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::Domain(format!("eps = {eps} must lie in [0, 1]")));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("p = {p} must lie in (0, 1)")));
    }
    let np = n as f64 * p;
    if np <= std::f64::consts::E {
        return Err(Error::Regime(format!("np = {np} must exceed e so that ln(np) > 1")));
    }
    Ok(np)
}

/// `(1 ∓ ε)·sqrt(n²p / ln(np))`, the dense-regime band for the largest
/// complete minor.
pub fn theoretical_ccl_dense(n: usize, p: f64, eps: f64) -> Result<(f64, f64)> {
    let np = check_dense(n, p, eps)?;
    let mid = (n as f64 * n as f64 * p / np.ln()).sqrt();
    Ok(((1.0 - eps) * mid, (1.0 + eps) * mid))
}

/// The same band in the constant-`p` form `(1 ∓ ε)·n / sqrt(log_b(np))`
/// with `b = 1/(1-p)`.
pub fn simplified_ccl_dense(n: usize, p: f64, eps: f64) -> Result<(f64, f64)> {
    let np = check_dense(n, p, eps)?;
    let log_b = np.ln() / -(-p).ln_1p();
    let mid = n as f64 / log_b.sqrt();
    Ok(((1.0 - eps) * mid, (1.0 + eps) * mid))
}

/// `(δ√n, 2√(cn))` for `G(n, c/n)` with `c > 1`.
pub fn sparse_bounds(n: usize, c: f64, delta: f64) -> Result<(f64, f64)> {
    if c.is_nan() || c <= 1.0 {
        return Err(Error::Subcritical(c));
    }
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let nf = n as f64;
    Ok((delta * nf.sqrt(), 2.0 * (c * nf).sqrt()))
}

/// Largest `k` with `C(k, 2) ≤ m`: a `K_k` minor needs at least that
/// many edges.
pub fn edge_bound_ccl(m: usize) -> usize {
    let mut k = ((1.0 + (1.0 + 8.0 * m as f64).sqrt()) / 2.0) as usize;
    while k * (k - 1) / 2 > m {
        k -= 1;
    }
    while (k + 1) * k / 2 <= m {
        k += 1;
    }
    k
}
