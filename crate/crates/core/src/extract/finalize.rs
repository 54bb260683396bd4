use std::collections::BTreeSet;

use crate::analysis::verify::verify_minor;
use crate::certificate::MinorCertificate;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

use super::pairs::{CandidateFamily, PairState};
use super::stages::Join;

/// The assembled minor and which candidates it kept.
#[derive(Debug, Clone, PartialEq)]
pub struct FinalMinor {
    pub certificate: MinorCertificate,
    /// Candidate index behind each branch set, ascending.
    pub retained: Vec<usize>,
    /// Candidates deleted to cover the surviving unjoined pairs.
    pub cover: Vec<usize>,
}

/// Delete discarded candidates and a vertex cover of the pairs still
/// unjoined, then merge each joiner path into the lower-indexed candidate
/// of the pair it served. The certificate is verified against `host`
/// before it is returned.
pub fn finalize_minor(family: &CandidateFamily, state: &PairState, joins: &[Join], host: &Graph) -> Result<FinalMinor> {
    let k = family.len();
    if state.candidate_count() != k {
        return Err(Error::Precondition(format!(
            "pair state covers {} candidates, family has {k}",
            state.candidate_count()
        )));
    }
    let mut deleted = vec![false; k];
    for &c in state.discarded() {
        deleted[c] = true;
    }
    let residual: BTreeSet<(usize, usize)> = state.pairs().filter(|&(a, b)| !deleted[a] && !deleted[b]).collect();
    let cover = greedy_cover(k, &residual);
    for &c in &cover {
        deleted[c] = true;
    }

    let mut sets: Vec<Vec<Vertex>> = (0..k).map(|c| family.set(c).to_vec()).collect();
    for join in joins {
        if !deleted[join.a] && !deleted[join.b] {
            let owner = join.a.min(join.b);
            sets[owner].extend_from_slice(join.path.vertices());
        }
    }
    let retained: Vec<usize> = (0..k).filter(|&c| !deleted[c]).collect();
    let branch_sets = retained.iter().map(|&c| std::mem::take(&mut sets[c])).collect();
    let certificate = MinorCertificate::new(host.vertex_count(), branch_sets);
    verify_minor(host, &certificate).map_err(|e| Error::Verification(e.to_string()))?;
    Ok(FinalMinor {
        certificate,
        retained,
        cover,
    })
}

/// Repeatedly delete the candidate of highest residual degree, lowest
/// index first on ties, until no pair is left.
fn greedy_cover(k: usize, pairs: &BTreeSet<(usize, usize)>) -> Vec<usize> {
    let mut adj = vec![BTreeSet::new(); k];
    for &(a, b) in pairs {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let mut cover = Vec::new();
    loop {
        let best = (0..k).filter(|&c| !adj[c].is_empty()).max_by_key(|&c| (adj[c].len(), std::cmp::Reverse(c)));
        let Some(c) = best else { break };
        for o in std::mem::take(&mut adj[c]) {
            adj[o].remove(&c);
        }
        cover.push(c);
    }
    cover.sort_unstable();
    cover
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::pairs::build_candidates;
    use crate::path::VertexPath;

    /// Four candidates `{0,1}, {2,3}, {4,5}, {6,7}` on a complete graph.
    fn complete_fixture() -> (CandidateFamily, Graph) {
        let family = build_candidates(&VertexPath::new((0..8).collect()), 4, 2).unwrap();
        let g = Graph::from_edges(8, (0..8).flat_map(|u| (u + 1..8).map(move |v| (u, v)))).unwrap();
        (family, g)
    }

    #[test]
    fn nothing_unjoined_keeps_all() {
        let (family, g) = complete_fixture();
        let state = PairState::from_pairs(4, []).unwrap();
        let m = finalize_minor(&family, &state, &[], &g).unwrap();
        assert_eq!(m.certificate.order, 4);
        assert_eq!(m.certificate.branch_sets[2], vec![4, 5]);
    }

    #[test]
    fn one_pair_costs_one_candidate() {
        let (family, g) = complete_fixture();
        let state = PairState::from_pairs(4, [(1, 2)]).unwrap();
        let m = finalize_minor(&family, &state, &[], &g).unwrap();
        assert_eq!(m.certificate.order, 3);
        assert_eq!(m.cover.len(), 1);
    }

    #[test]
    fn path_of_pairs_uses_middle() {
        let (family, g) = complete_fixture();
        let state = PairState::from_pairs(4, [(1, 2), (2, 3)]).unwrap();
        let m = finalize_minor(&family, &state, &[], &g).unwrap();
        assert_eq!(m.cover, vec![2]);
        assert_eq!(m.retained, vec![0, 1, 3]);
    }

    #[test]
    fn joiner_goes_to_lower_index() {
        // Candidates 0 = {0}, 1 = {1}; joiner 2-3 touches both ends.
        let family = build_candidates(&VertexPath::new(vec![0, 1]), 2, 1).unwrap();
        let g = Graph::from_edges(4, [(0, 2), (2, 3), (3, 1)]).unwrap();
        let state = PairState::from_pairs(2, []).unwrap();
        let join = Join {
            a: 0,
            b: 1,
            path_index: 0,
            path: VertexPath::new(vec![2, 3]),
        };
        let m = finalize_minor(&family, &state, std::slice::from_ref(&join), &g).unwrap();
        assert_eq!(m.certificate.branch_sets, vec![vec![0, 2, 3], vec![1]]);

        // Without the join the pair is not adjacent and verification fails.
        assert!(matches!(finalize_minor(&family, &state, &[], &g), Err(Error::Verification(_))));
    }

    #[test]
    fn discarded_are_dropped_with_their_pairs() {
        let (family, g) = complete_fixture();
        let mut state = PairState::from_pairs(4, [(0, 1), (0, 2)]).unwrap();
        state.discard([0]);
        let m = finalize_minor(&family, &state, &[], &g).unwrap();
        assert_eq!(m.retained, vec![1, 2, 3]);
        assert!(m.cover.is_empty());
    }
}
