use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extract::{dense_parameters, sparse_parameters, ExtractConfig, Regime};
use crate::path::PathSearch;

/// Stream ids are `grid_index * STREAM_STRIDE + seed_index`.
pub const STREAM_STRIDE: u64 = 1_000_000;

/// Parameter grid. Dense grids give `p` or `np` (not both) with `eps`;
/// sparse grids give `c` with `delta` and `alpha`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub n: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub p: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub np: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub eps: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub c: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub delta: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alpha: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Seeds {
    pub count: u64,
    #[serde(default)]
    pub base: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub regime: Regime,
    pub grid: Grid,
    pub seeds: Seeds,
    #[serde(default)]
    pub budgets: PathSearch,
    /// Worker threads; all available cores when absent.
    #[serde(default)]
    pub jobs: Option<usize>,
    pub output: PathBuf,
}

/// One fully specified parameter combination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub regime: Regime,
    pub n: usize,
    /// Edge probability; `c / n` for sparse points.
    pub p: f64,
    /// Expected degree scale; `n p` for dense points.
    pub c: f64,
    pub eps: Option<f64>,
    pub delta: Option<f64>,
    pub alpha: Option<f64>,
}

impl GridPoint {
    pub fn dense(n: usize, p: f64, eps: f64) -> Self {
        Self {
            regime: Regime::Dense,
            n,
            p,
            c: n as f64 * p,
            eps: Some(eps),
            delta: None,
            alpha: None,
        }
    }

    pub fn sparse(n: usize, c: f64, delta: f64, alpha: f64) -> Self {
        Self {
            regime: Regime::Sparse,
            n,
            p: c / n as f64,
            c,
            eps: None,
            delta: Some(delta),
            alpha: Some(alpha),
        }
    }

    /// Check the point against its regime's preconditions.
    pub fn validate(&self, extract: &ExtractConfig) -> Result<()> {
        match self.regime {
            Regime::Dense => dense_parameters(self.n, self.p, self.eps.unwrap_or(f64::NAN), extract).map(drop),
            Regime::Sparse => sparse_parameters(
                self.n,
                self.c,
                self.delta.unwrap_or(f64::NAN),
                self.alpha.unwrap_or(f64::NAN),
            )
            .map(drop),
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("experiment config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn extract_config(&self) -> ExtractConfig {
        ExtractConfig {
            path: self.budgets,
            ..ExtractConfig::default()
        }
    }

    /// Grid points in canonical order: `n` outermost, then `p`/`np`/`c`,
    /// then `eps` or `delta`, then `alpha`.
    pub fn points(&self) -> Result<Vec<GridPoint>> {
        let g = &self.grid;
        let mut out = Vec::new();
        match self.regime {
            Regime::Dense => {
                if !g.c.is_empty() || !g.delta.is_empty() || !g.alpha.is_empty() {
                    return Err(Error::Domain("dense grids take p or np with eps".into()));
                }
                if g.p.is_empty() == g.np.is_empty() {
                    return Err(Error::Domain("dense grids need exactly one of p and np".into()));
                }
                for &n in &g.n {
                    let ps: Vec<f64> = if g.p.is_empty() {
                        g.np.iter().map(|&d| d / n as f64).collect()
                    } else {
                        g.p.clone()
                    };
                    for &p in &ps {
                        for &eps in &g.eps {
                            out.push(GridPoint::dense(n, p, eps));
                        }
                    }
                }
            }
            Regime::Sparse => {
                if !g.p.is_empty() || !g.np.is_empty() || !g.eps.is_empty() {
                    return Err(Error::Domain("sparse grids take c with delta and alpha".into()));
                }
                for &n in &g.n {
                    for &c in &g.c {
                        for &delta in &g.delta {
                            for &alpha in &g.alpha {
                                out.push(GridPoint::sparse(n, c, delta, alpha));
                            }
                        }
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(Error::Domain("experiment grid is empty".into()));
        }
        Ok(out)
    }

    /// Validate the whole configuration without running anything.
    pub fn validate(&self) -> Result<Vec<GridPoint>> {
        if self.seeds.count == 0 {
            return Err(Error::Domain("seed count must be at least 1".into()));
        }
        if self.seeds.count > STREAM_STRIDE {
            return Err(Error::Domain(format!("at most {STREAM_STRIDE} seeds per grid point")));
        }
        if self.jobs == Some(0) {
            return Err(Error::Domain("jobs must be at least 1".into()));
        }
        let points = self.points()?;
        let extract = self.extract_config();
        for point in &points {
            point.validate(&extract)?;
        }
        Ok(points)
    }
}
