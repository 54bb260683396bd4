//! Sample G(n, p) and split it into two exposure rounds.
//!
//! cargo run --release --example sample_graph -- 20000 0.002

use gnp_minors::rng::RngStream;
use gnp_minors::sample::{sample_gnp, split_exposure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(Ok(20_000), |a| a.parse())?;
    let p: f64 = args.next().map_or(Ok(0.002), |a| a.parse())?;

    let stream = RngStream::new(42, 0);
    let g = sample_gnp(n, p, &stream)?;
    let expected = p * (n * (n - 1)) as f64 / 2.0;
    println!("G({n}, {p}): {} edges, expected {expected:.0}", g.edge_count());
    let max_deg = (0..n as u32).map(|v| g.degree(v)).max().unwrap_or(0);
    println!("max degree {max_deg}, mean {:.2}", 2.0 * g.edge_count() as f64 / n as f64);

    // Union of two independent rounds has the same law as one round at p.
    let split = split_exposure(p, p / 10.0)?;
    let first = sample_gnp(n, split.p_first, &stream.substream(1))?;
    let second = sample_gnp(n, split.p_second, &stream.substream(2))?;
    let union = first.union(&second)?;
    println!(
        "rounds p' = {:.2e}, p'' = {:.2e}: {} + {} edges, union {}",
        split.p_first,
        split.p_second,
        first.edge_count(),
        second.edge_count(),
        union.edge_count()
    );
    Ok(())
}
