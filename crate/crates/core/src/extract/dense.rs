use crate::error::Result;
use crate::graph::{Graph, Vertex};
use crate::path::find_long_path;
use crate::rng::RngStream;
use crate::sample::{bipartite_pairs, gnp_pairs};

use super::params::{dense_parameters, ExtractConfig};
use super::pipeline::{self, Extraction, Inputs, Regime};

/// Sample `G(n, p)` by two-round exposure and extract a verified complete
/// minor from it.
///
/// Vertices `0..n'` carry the candidates: a long path in the first round
/// is cut into `k'` segments of `t` vertices, and pairs of segments with
/// no second-round edge are joined by short paths taken from a long path
/// through the remaining vertices `n'..n`.
pub fn extract_dense(n: usize, p: f64, eps: f64, stream: &RngStream, config: &ExtractConfig) -> Result<Extraction> {
    let params = dense_parameters(n, p, eps, config)?;
    let split = params.split;
    let n1 = params.n_prime as Vertex;
    let n = n as Vertex;

    let first = Graph::from_normalized(n as usize, gnp_pairs(0..n1, split.p_first, &stream.substream(1)));
    let second = Graph::from_normalized(n as usize, gnp_pairs(0..n1, split.p_second, &stream.substream(2)));
    // Cross pairs first keeps the list lexicographically sorted.
    let mut rest = bipartite_pairs(0..n1, n1..n, p, &stream.substream(4));
    rest.extend(gnp_pairs(n1..n, p, &stream.substream(3)));
    let host = first.union(&second)?.union(&Graph::from_normalized(n as usize, rest))?;

    let prefix: Vec<Vertex> = (0..n1).collect();
    let suffix: Vec<Vertex> = (n1..n).collect();
    let candidate_path = find_long_path(&first, Some(&prefix), &stream.substream(5), &config.path);
    let joiner_path = find_long_path(&host, Some(&suffix), &stream.substream(6), &config.path);

    let mut warnings = Vec::new();
    if p * params.t as f64 >= 1.0 {
        warnings.push(format!(
            "p·t = {:.3} ≥ 1: outside the p = o(1) regime the construction targets",
            p * params.t as f64
        ));
    }
    let ladder = |k_used| params.ladder(k_used);
    let (certificate, diagnostics) = pipeline::run(Inputs {
        regime: Regime::Dense,
        host: &host,
        second_round: &second,
        candidate_path: &candidate_path,
        joiner_path,
        target_order: params.k,
        k_prime: params.k_prime,
        t: params.t,
        p_second: split.p_second,
        shortcut_coeff: eps * eps,
        ladder: &ladder,
        warnings,
    })?;
    Ok(Extraction {
        certificate,
        diagnostics,
        graph: host,
    })
}
