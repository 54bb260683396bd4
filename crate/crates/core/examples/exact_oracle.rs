//! Exact largest complete minor of tiny graphs.

use gnp_minors::analysis::{edge_bound_ccl, exact_ccl, verify_minor};
use gnp_minors::graph::Graph;
use gnp_minors::rng::RngStream;
use gnp_minors::sample::sample_gnp;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
    let petersen = Graph::from_edges(10, outer.chain(spokes).chain(inner))?;
    let (k, witness) = exact_ccl(&petersen)?;
    println!("Petersen graph: K_{k} minor");
    print!("{}", witness.to_text());

    for seed in 0..6 {
        let g = sample_gnp(9, 0.5, &RngStream::new(seed, 0))?;
        let (k, witness) = exact_ccl(&g)?;
        assert!(verify_minor(&g, &witness).is_ok());
        println!("G(9, 1/2) seed {seed}: m = {:>2}, ccl = {k}, edge bound {}", g.edge_count(), edge_bound_ccl(g.edge_count()));
    }
    Ok(())
}
