//! Dense regime: p well above 1/n.
//!
//! cargo run --release --example extract_dense -- 10000 0.01

use gnp_minors::analysis::theoretical_ccl_dense;
use gnp_minors::extract::{dense_parameters, extract_dense, ExtractConfig};
use gnp_minors::rng::RngStream;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(Ok(10_000), |a| a.parse())?;
    let p: f64 = args.next().map_or(Ok(0.01), |a| a.parse())?;
    let eps = 0.2;
    let config = ExtractConfig::default();

    let params = dense_parameters(n, p, eps, &config)?;
    println!("k = {}, k' = {}, t = {}, |V'| = {}", params.k, params.k_prime, params.t, params.n_prime);

    let ex = extract_dense(n, p, eps, &RngStream::new(1, 0), &config)?;
    let d = &ex.diagnostics;
    println!("U0 = {} (expected {:.1}), shortcut: {}", d.u0, d.expected_u0, d.shortcut);
    for s in &d.stages {
        println!(
            "  stage {}: {} -> {} pairs (target {}), {} joined, {} paths failed",
            s.stage, s.start, s.end, s.target, s.joined, s.failed_paths
        );
    }
    let (lo, hi) = theoretical_ccl_dense(n, p, eps)?;
    println!("order {} with {} deleted by cover; band [{lo:.1}, {hi:.1}]", ex.certificate.order, d.cover);
    for w in &d.warnings {
        println!("note: {w}");
    }
    Ok(())
}
