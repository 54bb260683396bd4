//! Independent check of complete-minor certificates.

use std::collections::VecDeque;

use thiserror::Error;

use crate::certificate::MinorCertificate;
use crate::graph::{Graph, Vertex};

/// First violated clause found by [`verify_minor`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinorViolation {
    #[error("certificate is for {claimed} vertices, graph has {actual}")]
    VertexCount { claimed: usize, actual: usize },
    #[error("declared order {declared} but {found} branch sets")]
    OrderMismatch { declared: usize, found: usize },
    #[error("branch set {set} is empty")]
    Empty { set: usize },
    #[error("vertex {vertex} of branch set {set} is out of range")]
    OutOfRange { set: usize, vertex: Vertex },
    #[error("vertex {vertex} lies in branch sets {first} and {second}")]
    Overlap { vertex: Vertex, first: usize, second: usize },
    #[error("branch set {set} is not connected")]
    Disconnected { set: usize },
    #[error("branch sets {a} and {b} are not adjacent")]
    NotAdjacent { a: usize, b: usize },
}

/// Check that `cert` witnesses a `K_order` minor of `g`.
///
/// Clauses are checked in the order of the [`MinorViolation`] variants and
/// the first failure is reported with the smallest offending indices.
pub fn verify_minor(g: &Graph, cert: &MinorCertificate) -> Result<(), MinorViolation> {
    let n = g.vertex_count();
    if cert.vertex_count != n {
        return Err(MinorViolation::VertexCount {
            claimed: cert.vertex_count,
            actual: n,
        });
    }
    let k = cert.branch_sets.len();
    if cert.order != k {
        return Err(MinorViolation::OrderMismatch {
            declared: cert.order,
            found: k,
        });
    }
    const FREE: u32 = u32::MAX;
    let mut owner = vec![FREE; n];
    for (i, set) in cert.branch_sets.iter().enumerate() {
        if set.is_empty() {
            return Err(MinorViolation::Empty { set: i });
        }
        for &v in set {
            let slot = owner
                .get_mut(v as usize)
                .ok_or(MinorViolation::OutOfRange { set: i, vertex: v })?;
            if *slot != FREE {
                return Err(MinorViolation::Overlap {
                    vertex: v,
                    first: *slot as usize,
                    second: i,
                });
            }
            *slot = i as u32;
        }
    }

    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for (i, set) in cert.branch_sets.iter().enumerate() {
        seen[set[0] as usize] = true;
        queue.push_back(set[0]);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if owner[w as usize] == i as u32 && !seen[w as usize] {
                    seen[w as usize] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        if reached != set.len() {
            return Err(MinorViolation::Disconnected { set: i });
        }
    }

    let words = k.div_ceil(64);
    let mut adjacent = vec![0u64; k * words];
    for (i, set) in cert.branch_sets.iter().enumerate() {
        for &v in set {
            for &w in g.neighbors(v) {
                let j = owner[w as usize];
                if j != FREE {
                    adjacent[i * words + (j as usize >> 6)] |= 1 << (j & 63);
                }
            }
        }
    }
    for a in 0..k {
        for b in a + 1..k {
            if adjacent[a * words + (b >> 6)] >> (b & 63) & 1 == 0 {
                return Err(MinorViolation::NotAdjacent { a, b });
            }
        }
    }
    Ok(())
}
