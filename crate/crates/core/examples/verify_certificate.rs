//! Checking certificates, including ones that should fail.

use gnp_minors::analysis::verify_minor;
use gnp_minors::certificate::MinorCertificate;
use gnp_minors::extract::{extract_dense, ExtractConfig};
use gnp_minors::rng::RngStream;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ex = extract_dense(2000, 0.05, 0.2, &RngStream::new(3, 0), &ExtractConfig::default())?;
    let cert = &ex.certificate;
    println!("extracted K_{}: {:?}", cert.order, verify_minor(&ex.graph, cert));

    // Round trip through the text format.
    let parsed = MinorCertificate::read(cert.to_text().as_bytes())?;
    assert_eq!(&parsed, cert);

    let mut overlap = cert.clone();
    let v = overlap.branch_sets[0][0];
    overlap.branch_sets[1].push(v);
    println!("shared vertex: {}", verify_minor(&ex.graph, &overlap).unwrap_err());

    let mut split = cert.clone();
    let moved = split.branch_sets.remove(0);
    let (a, b) = moved.split_at(moved.len() / 2);
    split.branch_sets.push(a.to_vec());
    split.branch_sets.push(b.to_vec());
    split.order = split.branch_sets.len();
    match verify_minor(&ex.graph, &split) {
        Ok(()) => println!("split set: still valid"),
        Err(e) => println!("split set: {e}"),
    }
    Ok(())
}
