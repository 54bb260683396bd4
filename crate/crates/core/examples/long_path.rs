//! Long paths in sparse random graphs.
//!
//! cargo run --release --example long_path

use gnp_minors::path::{find_long_path, segment_path, PathSearch};
use gnp_minors::rng::RngStream;
use gnp_minors::sample::sample_gnp;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 50_000;
    for c in [1.5, 2.5, 4.0, 10.0] {
        let g = sample_gnp(n, c / n as f64, &RngStream::new(7, 0))?;
        let path = find_long_path(&g, None, &RngStream::new(7, 1), &PathSearch::default());
        path.validate(&g)?;
        println!("c = {c:>4}: path of {} vertices ({:.3} n)", path.len(), path.len() as f64 / n as f64);
    }

    let g = sample_gnp(n, 4.0 / n as f64, &RngStream::new(7, 0))?;
    let path = find_long_path(&g, None, &RngStream::new(7, 1), &PathSearch::default());
    let pieces = segment_path(&path, &[1000, 1000, 1000])?;
    println!("first three 1000-vertex segments start at {:?}", pieces.iter().map(|p| p.vertices()[0]).collect::<Vec<_>>());
    Ok(())
}
