//! Closed-form bands and the first-moment bound.

use gnp_minors::analysis::{
    simplified_ccl_dense, edge_bound_ccl, first_moment_log_bound, first_negative_order, sparse_bounds,
    theoretical_ccl_dense,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (lo, hi) = theoretical_ccl_dense(10_000, 0.01, 0.2)?;
    println!("G(10^4, 0.01): ccl in [{lo:.1}, {hi:.1}]");
    let (mid, _) = simplified_ccl_dense(1024, 0.5, 0.0)?;
    println!("G(1024, 1/2): n / sqrt(log_b(np)) = {mid:.2}");
    let (lo, hi) = sparse_bounds(1_000_000, 2.0, 0.05)?;
    println!("G(10^6, 2/n): [{lo:.0}, {hi:.1}]");
    println!("a graph with 100 edges has no K_{} minor", edge_bound_ccl(100) + 1);

    for n in [200, 500] {
        let reference = n as f64 / (n as f64).log2().sqrt();
        let k = first_negative_order(n, 0.5, 2)?.expect("k = n is always negative");
        println!("n = {n}: first negative k = {k}, n/sqrt(log2 n) = {reference:.1}");
        for k in [k - 10, k, n] {
            let r = first_moment_log_bound(n, 0.5, k)?;
            println!("  k = {k:>3}: log bound {:>10.2} ({:?})", r.log_expected_count, r.verdict);
        }
    }
    Ok(())
}
