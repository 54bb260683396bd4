//! Sparse regime: G(n, c/n) with constant c > 1.
//!
//! cargo run --release --example extract_sparse -- 100000 4

use gnp_minors::analysis::sparse_bounds;
use gnp_minors::extract::{extract_sparse, ExtractConfig};
use gnp_minors::rng::RngStream;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(Ok(100_000), |a| a.parse())?;
    let c: f64 = args.next().map_or(Ok(4.0), |a| a.parse())?;
    let (delta, alpha) = (0.05, 0.3);

    let (lo, hi) = sparse_bounds(n, c, delta)?;
    for seed in 0..5 {
        let ex = extract_sparse(n, c, delta, alpha, &RngStream::new(seed, 0), &ExtractConfig::default())?;
        let d = &ex.diagnostics;
        println!(
            "seed {seed}: path {}, {} candidates of {}, U0 = {}, order {}",
            d.path_len, d.k_used, d.t_used, d.u0, d.order
        );
    }
    println!("bounds [{lo:.1}, {hi:.1}]");
    Ok(())
}
