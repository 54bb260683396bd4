use crate::error::Result;
use crate::graph::{Graph, Vertex};
use crate::path::{find_long_path, VertexPath};
use crate::rng::RngStream;
use crate::sample::gnp_pairs;

use super::params::{sparse_parameters, ExtractConfig};
use super::pipeline::{self, Extraction, Inputs, Regime};

/// Sample `G(n, c/n)` as the union of `G(n, c₁/n)` and `G(n, c₂/n)` and
/// extract a verified complete minor of order `Θ(√n)`.
///
/// One long first-round path is split into halves: candidates come from
/// the first half, joiner paths from the second.
pub fn extract_sparse(
    n: usize,
    c: f64,
    delta: f64,
    alpha: f64,
    stream: &RngStream,
    config: &ExtractConfig,
) -> Result<Extraction> {
    let params = sparse_parameters(n, c, delta, alpha)?;
    let nf = n as f64;
    let all = 0..n as Vertex;
    let first = Graph::from_normalized(n, gnp_pairs(all.clone(), params.c1 / nf, &stream.substream(1)));
    let second = Graph::from_normalized(n, gnp_pairs(all, params.c2 / nf, &stream.substream(2)));
    let host = first.union(&second)?;

    let path = find_long_path(&first, None, &stream.substream(5), &config.path).into_vertices();
    let half = path.len() / 2;
    let candidate_path = VertexPath::new(path[..half].to_vec());
    let joiner_path = VertexPath::new(path[half..].to_vec());

    let ladder = |k_used| params.ladder(k_used);
    let (certificate, diagnostics) = pipeline::run(Inputs {
        regime: Regime::Sparse,
        host: &host,
        second_round: &second,
        candidate_path: &candidate_path,
        joiner_path,
        target_order: params.k,
        k_prime: params.k_prime,
        t: params.t,
        p_second: params.c2 / nf,
        shortcut_coeff: delta * delta,
        ladder: &ladder,
        warnings: Vec::new(),
    })?;
    Ok(Extraction {
        certificate,
        diagnostics,
        graph: host,
    })
}
