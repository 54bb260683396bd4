//! Binomial random graphs and two-round exposure.
//!
//! Sparse sampling (`p < SKIP_THRESHOLD`) walks the pairs in a fixed
//! order and jumps over absent pairs with geometric gaps, so the cost is
//! proportional to the number of edges drawn. Denser graphs flip one coin
//! per pair. Logarithms come from `libm` so gap lengths are identical
//! across platforms.

use std::ops::Range;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rng::RngStream;

/// Below this edge probability sampling uses geometric gap-skipping.
pub const SKIP_THRESHOLD: f64 = 0.05;

/// Sample `G(n, p)`: every unordered pair is present independently with
/// probability `p`. Deterministic in `(n, p, stream)`.
pub fn sample_gnp(n: usize, p: f64, stream: &RngStream) -> Result<Graph> {
    check_probability(p)?;
    let edges = gnp_pairs(0..n as Vertex, p, stream);
    Ok(Graph::from_normalized(n, edges))
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// Pairs `(u, v)`, `u < v`, both in `vertices`, each kept with probability
/// `p`, in lexicographic order.
pub(crate) fn gnp_pairs(vertices: Range<Vertex>, p: f64, stream: &RngStream) -> Vec<(Vertex, Vertex)> {
    let base = vertices.start;
    let n = vertices.len() as u64;
    let mut rng = stream.rng();
    let mut edges = Vec::new();
    if n < 2 || p <= 0.0 {
        return edges;
    }
    let pairs = n * (n - 1) / 2;
    let at = |u: u64, v: u64| (base + u as Vertex, base + v as Vertex);

    if p >= SKIP_THRESHOLD {
        for u in 0..n {
            for v in u + 1..n {
                if p >= 1.0 || rng.gen::<f64>() < p {
                    edges.push(at(u, v));
                }
            }
        }
        return edges;
    }

    edges.reserve((pairs as f64 * p * 1.1) as usize + 16);
    let log_q = libm::log(1.0 - p);
    // (u, v) is the last pair examined; row u owns columns u+1..n.
    let (mut u, mut v) = (0u64, 0u64);
    while let Some(gap) = geometric_gap(&mut rng, log_q, pairs) {
        v += gap + 1;
        while v >= n {
            let overflow = v - n;
            u += 1;
            if u + 1 >= n {
                return edges;
            }
            v = u + 1 + overflow;
        }
        edges.push(at(u, v));
    }
    edges
}

/// Cross pairs `(a, b)` with `a` in `left`, `b` in `right` (disjoint
/// ranges), each kept with probability `p`.
pub(crate) fn bipartite_pairs(
    left: Range<Vertex>,
    right: Range<Vertex>,
    p: f64,
    stream: &RngStream,
) -> Vec<(Vertex, Vertex)> {
    let (nl, nr) = (left.len() as u64, right.len() as u64);
    let mut rng = stream.rng();
    let mut edges = Vec::new();
    if nl == 0 || nr == 0 || p <= 0.0 {
        return edges;
    }
    let pair = |idx: u64| {
        let a = left.start + (idx / nr) as Vertex;
        let b = right.start + (idx % nr) as Vertex;
        if a < b { (a, b) } else { (b, a) }
    };
    let total = nl * nr;
    if p >= SKIP_THRESHOLD {
        for idx in 0..total {
            if p >= 1.0 || rng.gen::<f64>() < p {
                edges.push(pair(idx));
            }
        }
        return edges;
    }
    let log_q = libm::log(1.0 - p);
    let mut idx: u64 = 0;
    let mut first = true;
    while let Some(gap) = geometric_gap(&mut rng, log_q, total) {
        idx = if first { gap } else { idx + gap + 1 };
        first = false;
        if idx >= total {
            break;
        }
        edges.push(pair(idx));
    }
    edges
}

/// Number of failures before the next success; `None` once the gap
/// exceeds `limit` (nothing further can be hit).
fn geometric_gap<R: Rng>(rng: &mut R, log_q: f64, limit: u64) -> Option<u64> {
    // 1 - U lies in (0, 1], so the logarithm is finite.
    let u = 1.0 - rng.gen::<f64>();
    let gap = (libm::log(u) / log_q).floor();
    if !gap.is_finite() || gap >= limit as f64 {
        None
    } else {
        Some(gap as u64)
    }
}

/// Decomposition `p = p' + p'' - p'p''` of an edge probability into two
/// independent exposure rounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExposureSplit {
    pub p: f64,
    pub p_first: f64,
    pub p_second: f64,
}

impl ExposureSplit {
    /// Probability that a pair is present in the union of both rounds.
    pub fn combined(&self) -> f64 {
        self.p_first + self.p_second - self.p_first * self.p_second
    }
}

/// Choose the second-round probability so the union of both rounds has
/// edge probability `p`.
pub fn split_exposure(p: f64, p_first: f64) -> Result<ExposureSplit> {
    check_probability(p)?;
    check_probability(p_first)?;
    if p_first >= 1.0 {
        return Err(Error::Domain("first-round probability must be below 1".into()));
    }
    if p_first > p {
        return Err(Error::Domain(format!("first-round probability {p_first} exceeds p = {p}")));
    }
    let p_second = ((p - p_first) / (1.0 - p_first)).clamp(0.0, p);
    Ok(ExposureSplit { p, p_first, p_second })
}
