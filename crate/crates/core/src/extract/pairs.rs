//! Candidate branch sets and the auxiliary graph of unjoined pairs.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::path::{segment_path, VertexPath};

pub(crate) const NO_CANDIDATE: u32 = u32::MAX;

/// Consecutive equal-size segments `B_0, B_1, ...` of one path, in path
/// order. Each segment is itself a path, hence connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateFamily {
    sets: Vec<VertexPath>,
}

/// Cut the first `count * size` vertices of `path` into `count` candidates.
pub fn build_candidates(path: &VertexPath, count: usize, size: usize) -> Result<CandidateFamily> {
    if size == 0 {
        return Err(Error::Domain("candidate size must be positive".into()));
    }
    let needed = count * size;
    if needed > path.len() {
        return Err(Error::Capacity {
            what: "candidate branch sets",
            needed,
            available: path.len(),
        });
    }
    let sets = segment_path(path, &vec![size; count])?;
    Ok(CandidateFamily { sets })
}

impl CandidateFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn set(&self, index: usize) -> &[Vertex] {
        self.sets[index].vertices()
    }

    pub fn sets(&self) -> &[VertexPath] {
        &self.sets
    }

    /// Map each vertex of `0..n` to the index of the candidate holding it,
    /// or `NO_CANDIDATE`.
    pub(crate) fn labels(&self, n: usize) -> Vec<u32> {
        let mut label = vec![NO_CANDIDATE; n];
        for (i, set) in self.sets.iter().enumerate() {
            for &v in set.vertices() {
                label[v as usize] = i as u32;
            }
        }
        label
    }
}

/// Unjoined candidate pairs, viewed as a graph on candidate indices.
///
/// Pairs are stored as `(i, j)` with `i < j` and iterate in lexicographic
/// order, which is the fixed pair order used by the greedy stages. Degrees
/// are the sizes of the per-candidate partner sets, so they cannot drift
/// from the pair set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairState {
    unjoined: BTreeSet<(u32, u32)>,
    partners: Vec<BTreeSet<u32>>,
    discarded: BTreeSet<usize>,
}

impl PairState {
    /// State over `candidates` indices with the given unjoined pairs
    /// (either orientation) and nothing discarded.
    pub fn from_pairs(candidates: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut state = Self {
            unjoined: BTreeSet::new(),
            partners: vec![BTreeSet::new(); candidates],
            discarded: BTreeSet::new(),
        };
        for (a, b) in pairs {
            if a == b || a >= candidates || b >= candidates {
                return Err(Error::Domain(format!("invalid candidate pair ({a}, {b})")));
            }
            state.insert(a as u32, b as u32);
        }
        Ok(state)
    }

    fn insert(&mut self, a: u32, b: u32) {
        let key = (a.min(b), a.max(b));
        if self.unjoined.insert(key) {
            self.partners[a as usize].insert(b);
            self.partners[b as usize].insert(a);
        }
    }

    pub(crate) fn remove(&mut self, pair: (u32, u32)) -> bool {
        if self.unjoined.remove(&pair) {
            self.partners[pair.0 as usize].remove(&pair.1);
            self.partners[pair.1 as usize].remove(&pair.0);
            true
        } else {
            false
        }
    }

    pub fn candidate_count(&self) -> usize {
        self.partners.len()
    }

    /// `U_i`: the number of pairs still unjoined.
    pub fn u_count(&self) -> usize {
        self.unjoined.len()
    }

    pub fn degree(&self, candidate: usize) -> usize {
        self.partners[candidate].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.partners.iter().map(BTreeSet::len).collect()
    }

    /// Unjoined pairs in the fixed lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.unjoined.iter().map(|&(a, b)| (a as usize, b as usize))
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.unjoined.contains(&(a.min(b) as u32, a.max(b) as u32))
    }

    pub(crate) fn partners(&self, candidate: usize) -> &BTreeSet<u32> {
        &self.partners[candidate]
    }

    /// Candidates that will be deleted when the minor is assembled.
    pub fn discarded(&self) -> &BTreeSet<usize> {
        &self.discarded
    }

    pub(crate) fn discard(&mut self, candidates: impl IntoIterator<Item = usize>) {
        self.discarded.extend(candidates);
    }

    /// Pairs touching any of `candidates`, in pair order, each once.
    pub(crate) fn pairs_touching(&self, candidates: &BTreeSet<usize>) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = candidates
            .iter()
            .flat_map(|&c| {
                self.partners[c]
                    .iter()
                    .map(move |&o| ((c as u32).min(o), (c as u32).max(o)))
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Candidates whose degree exceeds `threshold`, ascending.
    pub fn high_degree(&self, threshold: f64) -> Vec<usize> {
        (0..self.partners.len())
            .filter(|&c| self.partners[c].len() as f64 > threshold)
            .collect()
    }

    /// Recompute degrees from the pair set and compare; used by tests and
    /// debug assertions.
    pub fn is_consistent(&self) -> bool {
        let mut deg = vec![0usize; self.partners.len()];
        for &(a, b) in &self.unjoined {
            if a >= b {
                return false;
            }
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        deg == self.degrees()
            && self.unjoined.iter().all(|&(a, b)| {
                self.partners[a as usize].contains(&b) && self.partners[b as usize].contains(&a)
            })
    }
}

/// All candidate pairs with no edge of `second_round` between them.
pub fn compute_unjoined_pairs(family: &CandidateFamily, second_round: &Graph) -> Result<PairState> {
    let k = family.len();
    let n = second_round.vertex_count();
    if let Some(&v) = family.sets.iter().flat_map(|s| s.vertices()).find(|&&v| v as usize >= n) {
        return Err(Error::Domain(format!("candidate vertex {v} outside second-round graph")));
    }
    let label = family.labels(n);
    let words = k.div_ceil(64);
    let mut joined = vec![0u64; k * words];
    for (i, set) in family.sets.iter().enumerate() {
        for &v in set.vertices() {
            for &w in second_round.neighbors(v) {
                let j = label[w as usize];
                if j != NO_CANDIDATE && j as usize != i {
                    joined[i * words + (j as usize >> 6)] |= 1 << (j & 63);
                }
            }
        }
    }
    let mut state = PairState::from_pairs(k, std::iter::empty())?;
    for i in 0..k {
        for j in i + 1..k {
            if joined[i * words + (j >> 6)] >> (j & 63) & 1 == 0 {
                state.insert(i as u32, j as u32);
            }
        }
    }
    Ok(state)
}

/// Discard every candidate of degree above `threshold` and drop all pairs
/// touching one; those pairs count as joined because their discarded
/// endpoint is deleted when the minor is assembled.
pub fn prune_high_degree(mut state: PairState, threshold: f64) -> Result<(PairState, Vec<usize>)> {
    if threshold.is_nan() || threshold <= 0.0 {
        return Err(Error::Domain(format!("pruning threshold {threshold} must be positive")));
    }
    let pruned = state.high_degree(threshold);
    let set: BTreeSet<usize> = pruned.iter().copied().collect();
    for pair in state.pairs_touching(&set) {
        state.remove(pair);
    }
    state.discard(pruned.iter().copied());
    Ok((state, pruned))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(n: usize) -> VertexPath {
        VertexPath::new((0..n as Vertex).collect())
    }

    #[test]
    fn candidate_examples() {
        let f = build_candidates(&line(12), 3, 4).unwrap();
        assert_eq!(f.set(0), &[0, 1, 2, 3]);
        assert_eq!(f.set(1), &[4, 5, 6, 7]);
        assert_eq!(f.set(2), &[8, 9, 10, 11]);
        assert!(matches!(build_candidates(&line(12), 3, 5), Err(Error::Capacity { .. })));
        let g = build_candidates(&line(13), 3, 4).unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn unjoined_against_complete_and_empty() {
        let f = build_candidates(&line(12), 4, 3).unwrap();
        let complete = Graph::from_edges(12, (0..12).flat_map(|u| (u + 1..12).map(move |v| (u, v)))).unwrap();
        assert_eq!(compute_unjoined_pairs(&f, &complete).unwrap().u_count(), 0);
        let empty = Graph::empty(12);
        let s = compute_unjoined_pairs(&f, &empty).unwrap();
        assert_eq!(s.u_count(), 6);
        assert!(s.is_consistent());
    }

    #[test]
    fn unjoined_enumeration() {
        // k' = 4, t = 1; second round has B0–B1 and B2–B3 only.
        let f = build_candidates(&line(4), 4, 1).unwrap();
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let s = compute_unjoined_pairs(&f, &g).unwrap();
        let pairs: Vec<_> = s.pairs().collect();
        assert_eq!(pairs, vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(s.u_count(), 4);
        assert_eq!(s.degrees(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn prune_identity_when_low_degree() {
        let s = PairState::from_pairs(4, [(0, 1), (2, 3)]).unwrap();
        let (after, pruned) = prune_high_degree(s.clone(), 1.0).unwrap();
        assert!(pruned.is_empty());
        assert_eq!(after, s);
    }

    #[test]
    fn prune_star() {
        let s = PairState::from_pairs(6, (1..6).map(|j| (0, j))).unwrap();
        let (after, pruned) = prune_high_degree(s, 4.0).unwrap();
        assert_eq!(pruned, vec![0]);
        assert_eq!(after.u_count(), 0);
        assert!(after.discarded().contains(&0));
        assert!(after.is_consistent());
    }

    #[test]
    fn prune_shared_pair_removed_once() {
        // Candidates 0 and 1 have degree 3 and share pair (0, 1).
        let s = PairState::from_pairs(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 3)]).unwrap();
        let (after, pruned) = prune_high_degree(s, 2.0).unwrap();
        assert_eq!(pruned, vec![0, 1]);
        assert_eq!(after.pairs().collect::<Vec<_>>(), vec![(2, 3)]);
        assert!(after.is_consistent());
        assert!(prune_high_degree(after, 0.0).is_err());
    }
}
