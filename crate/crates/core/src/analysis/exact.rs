//! Exhaustive largest-complete-minor search for tiny graphs.
//!
//! Vertices are visited by decreasing degree and each is put into an
//! existing block, a new block, or left out. Blocks are created in order,
//! so every partition is reached once. A branch is cut when
//!
//! - the blocks so far plus the vertices still to place cannot beat the
//!   best order found, or exceed the edge bound;
//! - some block can no longer become connected through unplaced vertices;
//! - two blocks are not adjacent and neither has an unplaced neighbour
//!   that could later make them so.

use crate::certificate::MinorCertificate;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

use super::bounds::edge_bound_ccl;

pub const DEFAULT_EXACT_CAP: usize = 10;

/// Largest `k` such that `g` has a `K_k` minor, with a witness. Refuses
/// graphs with more than [`DEFAULT_EXACT_CAP`] vertices.
pub fn exact_ccl(g: &Graph) -> Result<(usize, MinorCertificate)> {
    exact_ccl_with_cap(g, DEFAULT_EXACT_CAP)
}

/// As [`exact_ccl`] with an explicit vertex cap (at most 64).
pub fn exact_ccl_with_cap(g: &Graph, cap: usize) -> Result<(usize, MinorCertificate)> {
    let n = g.vertex_count();
    if n > cap.min(64) {
        return Err(Error::TooLarge { n, cap: cap.min(64) });
    }
    let adj: Vec<u64> = (0..n as Vertex)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v as Vertex)), v));

    let mut search = Search {
        adj,
        order,
        limit: edge_bound_ccl(g.edge_count()).min(n),
        blocks: Vec::new(),
        best: Vec::new(),
    };
    if n > 0 {
        search.best = vec![1u64 << search.order[0]];
    }
    if let Some((u, v)) = g.edges().next() {
        search.best = vec![1 << u, 1 << v];
    }
    search.descend(0);

    let sets = search
        .best
        .iter()
        .map(|&mask| (0..n as Vertex).filter(|&v| mask >> v & 1 == 1).collect())
        .collect();
    let cert = MinorCertificate::new(n, sets);
    Ok((cert.order, cert))
}

struct Search {
    adj: Vec<u64>,
    order: Vec<usize>,
    limit: usize,
    blocks: Vec<u64>,
    best: Vec<u64>,
}

impl Search {
    fn neighbourhood(&self, mask: u64) -> u64 {
        let mut out = 0;
        let mut rest = mask;
        while rest != 0 {
            out |= self.adj[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        out
    }

    /// Vertices of `within` reachable from `start` inside `within`.
    fn reach(&self, start: u64, within: u64) -> u64 {
        let mut seen = start & within;
        let mut frontier = seen;
        while frontier != 0 {
            let next = self.neighbourhood(frontier) & within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    fn unplaced(&self, depth: usize) -> u64 {
        self.order[depth..].iter().fold(0, |m, &v| m | 1 << v)
    }

    fn viable(&self, depth: usize) -> bool {
        let free = self.unplaced(depth);
        let nbhd: Vec<u64> = self.blocks.iter().map(|&b| self.neighbourhood(b)).collect();
        for (i, &b) in self.blocks.iter().enumerate() {
            let lowest = b & b.wrapping_neg();
            if self.reach(lowest, b | free) & b != b {
                return false;
            }
            for j in i + 1..self.blocks.len() {
                let joined = nbhd[i] & self.blocks[j] != 0;
                if !joined && nbhd[i] & free == 0 && nbhd[j] & free == 0 {
                    return false;
                }
            }
        }
        true
    }

    fn complete(&self) -> bool {
        let nbhd: Vec<u64> = self.blocks.iter().map(|&b| self.neighbourhood(b)).collect();
        self.blocks.iter().enumerate().all(|(i, &b)| {
            self.reach(b & b.wrapping_neg(), b) == b && self.blocks[i + 1..].iter().all(|&c| nbhd[i] & c != 0)
        })
    }

    fn descend(&mut self, depth: usize) {
        let remaining = self.order.len() - depth;
        if self.blocks.len() + remaining <= self.best.len() || self.best.len() >= self.limit {
            return;
        }
        if !self.viable(depth) {
            return;
        }
        if remaining == 0 {
            if self.complete() {
                self.best = self.blocks.clone();
            }
            return;
        }
        let bit = 1u64 << self.order[depth];
        if self.blocks.len() < self.limit {
            self.blocks.push(bit);
            self.descend(depth + 1);
            self.blocks.pop();
        }
        for i in 0..self.blocks.len() {
            self.blocks[i] |= bit;
            self.descend(depth + 1);
            self.blocks[i] &= !bit;
        }
        self.descend(depth + 1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::verify::verify_minor;

    fn graph(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        graph(n, (0..n as Vertex).flat_map(|u| (u + 1..n as Vertex).map(move |v| (u, v))))
    }

    fn cycle(n: usize) -> Graph {
        graph(n, (0..n as Vertex).map(|u| (u, (u + 1) % n as Vertex)))
    }

    #[test]
    fn small_examples() {
        assert_eq!(exact_ccl(&complete(4)).unwrap().0, 4);
        assert_eq!(exact_ccl(&cycle(5)).unwrap().0, 3);
        assert_eq!(exact_ccl(&graph(6, (1..6).map(|v| (0, v)))).unwrap().0, 2);
        assert_eq!(exact_ccl(&Graph::empty(3)).unwrap().0, 1);
        assert_eq!(exact_ccl(&Graph::empty(0)).unwrap().0, 0);
    }

    #[test]
    fn named_graphs() {
        // Petersen graph has a K5 minor but no K6 (15 edges allow 6).
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
        let petersen = graph(10, outer.chain(spokes).chain(inner));
        let (k, cert) = exact_ccl(&petersen).unwrap();
        assert_eq!(k, 5);
        assert_eq!(verify_minor(&petersen, &cert), Ok(()));
        // K_{3,3} contracts to K4 only.
        let k33 = graph(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b))));
        assert_eq!(exact_ccl(&k33).unwrap().0, 4);
        assert_eq!(exact_ccl(&complete(10)).unwrap().0, 10);
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(exact_ccl(&Graph::empty(11)), Err(Error::TooLarge { n: 11, cap: 10 })));
        assert!(exact_ccl_with_cap(&Graph::empty(11), 12).is_ok());
    }
}
