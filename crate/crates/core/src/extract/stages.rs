//! The stage ladder and the greedy joining stage.
//!
//! Stage `i` starts with `U_{i-1}` unjoined pairs and tries to end with
//! `U_i = U_0 / 8^i`, using `U_{i-1}` joiner paths of `ℓ_i` vertices cut
//! from a piece `Q_i` of an auxiliary long path. Piece lengths grow by 4
//! per stage while piece counts shrink by 8, so late stages use few long
//! paths, each of which is much more likely to reach both sides of a pair.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::path::VertexPath;

use super::params::{floor_size, LadderSpec};
use super::pairs::{CandidateFamily, PairState, NO_CANDIDATE};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StagePlan {
    pub u0: usize,
    pub expected_u0: f64,
    /// `i*`, the number of stages.
    pub i_star: usize,
    /// `U_1..U_{i*}`.
    pub targets: Vec<usize>,
    /// `|Q_1|..|Q_{i*}|` after rescaling to the joiner capacity.
    pub q_sizes: Vec<usize>,
    /// `ℓ_1..ℓ_{i*}`.
    pub piece_len: Vec<usize>,
    /// Number of joiner paths cut from each `Q_i`.
    pub piece_count: Vec<usize>,
    /// `Δ_0..Δ_{i*-1}`.
    pub prune_deg: Vec<f64>,
    /// Common factor applied to the formula sizes of `Q_i`.
    pub q_rescale: f64,
    /// True when some `ℓ_i` had to be raised to 1 (see [`plan_stages_clamped`]).
    pub clamped: bool,
}

impl StagePlan {
    fn empty(u0: usize, expected_u0: f64) -> Self {
        Self {
            u0,
            expected_u0,
            i_star: 0,
            targets: Vec::new(),
            q_sizes: Vec::new(),
            piece_len: Vec::new(),
            piece_count: Vec::new(),
            prune_deg: Vec::new(),
            q_rescale: 1.0,
            clamped: false,
        }
    }

    /// Target before stage `i` (1-based): `U_{i-1}`.
    pub fn start_target(&self, stage: usize) -> usize {
        if stage == 1 { self.u0 } else { self.targets[stage - 2] }
    }
}

/// Plan the ladder for `u0` realized unjoined pairs.
///
/// Returns an empty ladder when `u0 ≤ n^{1/3}`. Otherwise
/// `i* = ⌈(ln U₀ − ln n^{1/3}) / ln 8⌉`, `U_i = ⌊U₀ / 8^i⌋`, and the
/// `|Q_i|` profile `q_scale / 2^i` is rescaled by one common factor so the
/// pieces exactly fill `joiner_capacity`. Fails with a capacity error if
/// some `ℓ_i = ⌊|Q_i| / U_{i-1}⌋` is zero.
pub fn plan_stages(u0: usize, expected_u0: f64, ladder: &LadderSpec, joiner_capacity: usize) -> Result<StagePlan> {
    plan(u0, expected_u0, ladder, joiner_capacity, false)
}

/// Like [`plan_stages`], but a stage whose `ℓ_i` would round to zero gets
/// single-vertex joiners instead, as many as `|Q_i|` allows.
pub fn plan_stages_clamped(
    u0: usize,
    expected_u0: f64,
    ladder: &LadderSpec,
    joiner_capacity: usize,
) -> Result<StagePlan> {
    plan(u0, expected_u0, ladder, joiner_capacity, true)
}

fn plan(u0: usize, expected_u0: f64, ladder: &LadderSpec, capacity: usize, clamp: bool) -> Result<StagePlan> {
    let cube_root = (ladder.n as f64).cbrt();
    if u0 as f64 <= cube_root {
        return Ok(StagePlan::empty(u0, expected_u0));
    }
    let octaves = ((u0 as f64).ln() - cube_root.ln()) / 8f64.ln();
    let i_star = ((octaves - 1e-9).ceil()).max(1.0) as usize;

    let targets: Vec<usize> = (1..=i_star)
        .map(|i| floor_size(u0 as f64 / 8f64.powi(i as i32)))
        .collect();

    let raw: Vec<f64> = (1..=i_star).map(|i| ladder.q_scale / 2f64.powi(i as i32)).collect();
    let raw_total: f64 = raw.iter().sum();
    let q_rescale = if raw_total > 0.0 { capacity as f64 / raw_total } else { 0.0 };
    let q_sizes: Vec<usize> = raw.iter().map(|q| floor_size(q * q_rescale)).collect();

    let mut piece_len = Vec::with_capacity(i_star);
    let mut piece_count = Vec::with_capacity(i_star);
    let mut clamped = false;
    for i in 1..=i_star {
        let before = if i == 1 { u0 } else { targets[i - 2] };
        let q = q_sizes[i - 1];
        let len = q.checked_div(before).unwrap_or(q);
        if len == 0 {
            if !clamp {
                return Err(Error::Capacity {
                    what: "joiner paths",
                    needed: before,
                    available: q,
                });
            }
            clamped = true;
            piece_len.push(1);
            piece_count.push(q.min(before));
        } else {
            piece_len.push(len);
            piece_count.push(before);
        }
    }
    let prune_deg = (1..=i_star).map(|i| ladder.prune_threshold(i, expected_u0)).collect();
    Ok(StagePlan {
        u0,
        expected_u0,
        i_star,
        targets,
        q_sizes,
        piece_len,
        piece_count,
        prune_deg,
        q_rescale,
        clamped,
    })
}

/// A pair joined by a joiner path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Join {
    pub a: usize,
    pub b: usize,
    /// Index of the serving path within the stage's path list.
    pub path_index: usize,
    pub path: VertexPath,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StageCase {
    /// Enough pairs touched pruned candidates; the quota was met by
    /// deleting those pairs alone.
    PrunedQuota,
    /// Pairs touching pruned candidates were dropped and joiner paths
    /// did the rest.
    Greedy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StageOutcome {
    pub state: PairState,
    pub case: StageCase,
    pub joins: Vec<Join>,
    /// Pairs dropped because they touch a pruned candidate.
    pub dropped_pairs: usize,
    pub failed_paths: usize,
    pub paths_used: usize,
    pub reached_target: bool,
}

/// Run one greedy stage.
///
/// `state` is the pair state entering the stage (before pruning) and
/// `pruned` the candidates whose degree exceeds the stage threshold;
/// they are added to the discarded set.
///
/// 1. If at least `u_count − target_remaining` pairs touch `pruned`,
///    exactly that many of them (first in pair order) are deleted and the
///    stage ends.
/// 2. Otherwise all pairs touching `pruned` are deleted, then for each
///    path in order: stop if `target_remaining` pairs remain; else join
///    the first remaining pair in pair order whose two candidates both
///    send an edge of `host` to the path, or record a failed path.
pub fn run_stage(
    mut state: PairState,
    pruned: &[usize],
    paths: &[VertexPath],
    target_remaining: usize,
    host: &Graph,
    family: &CandidateFamily,
) -> Result<StageOutcome> {
    let label = family.labels(host.vertex_count());
    check_joiners(paths, &label)?;

    let pruned_set: BTreeSet<usize> = pruned.iter().copied().collect();
    let quota = state.u_count().saturating_sub(target_remaining);
    let touching = state.pairs_touching(&pruned_set);
    state.discard(pruned.iter().copied());

    if touching.len() >= quota {
        for &pair in touching.iter().take(quota) {
            state.remove(pair);
        }
        debug_assert!(state.is_consistent());
        return Ok(StageOutcome {
            state,
            case: StageCase::PrunedQuota,
            joins: Vec::new(),
            dropped_pairs: quota,
            failed_paths: 0,
            paths_used: 0,
            reached_target: true,
        });
    }

    for &pair in &touching {
        state.remove(pair);
    }
    let mut joins = Vec::new();
    let mut failed_paths = 0;
    let mut paths_used = 0;
    let mut touched: Vec<u32> = Vec::new();
    for (j, path) in paths.iter().enumerate() {
        if state.u_count() <= target_remaining {
            break;
        }
        paths_used += 1;
        touched.clear();
        for &v in path.vertices() {
            for &w in host.neighbors(v) {
                let c = label[w as usize];
                if c != NO_CANDIDATE {
                    touched.push(c);
                }
            }
        }
        touched.sort_unstable();
        touched.dedup();
        match first_joinable_pair(&state, &touched) {
            Some((a, b)) => {
                state.remove((a, b));
                joins.push(Join {
                    a: a as usize,
                    b: b as usize,
                    path_index: j,
                    path: path.clone(),
                });
            }
            None => failed_paths += 1,
        }
    }
    debug_assert!(state.is_consistent());
    let reached_target = state.u_count() <= target_remaining;
    Ok(StageOutcome {
        state,
        case: StageCase::Greedy,
        joins,
        dropped_pairs: touching.len(),
        failed_paths,
        paths_used,
        reached_target,
    })
}

/// Lexicographically first unjoined pair with both ends in `touched`
/// (sorted, deduplicated).
fn first_joinable_pair(state: &PairState, touched: &[u32]) -> Option<(u32, u32)> {
    for &a in touched {
        for &b in state.partners(a as usize).range(a + 1..) {
            if touched.binary_search(&b).is_ok() {
                return Some((a, b));
            }
        }
    }
    None
}

fn check_joiners(paths: &[VertexPath], label: &[u32]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for path in paths {
        for &v in path.vertices() {
            match label.get(v as usize) {
                None => return Err(Error::Precondition(format!("joiner vertex {v} out of range"))),
                Some(&c) if c != NO_CANDIDATE => {
                    return Err(Error::Precondition(format!("joiner vertex {v} lies in candidate {c}")))
                }
                _ => {}
            }
            if !seen.insert(v) {
                return Err(Error::Precondition(format!("joiner paths share vertex {v}")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::pairs::build_candidates;
    use crate::graph::Vertex;

    fn ladder(n: usize) -> LadderSpec {
        LadderSpec {
            n,
            k_prime: 1000,
            q_scale: 1.0,
            prune_coeff: 1.0,
        }
    }

    #[test]
    fn small_u0_gives_empty_ladder() {
        let plan = plan_stages(100, 100.0, &ladder(1_000_000), 10_000).unwrap();
        assert_eq!(plan.i_star, 0);
        assert!(plan.targets.is_empty());
        assert_eq!(plan_stages(0, 0.0, &ladder(8), 0).unwrap().i_star, 0);
    }

    #[test]
    fn single_octave() {
        let plan = plan_stages(800, 800.0, &ladder(1_000_000), 10_000).unwrap();
        assert_eq!(plan.i_star, 1);
        assert_eq!(plan.targets, vec![100]);
        assert_eq!(plan.q_sizes, vec![10_000]);
        assert_eq!(plan.piece_len, vec![12]);
        assert_eq!(plan.piece_count, vec![800]);
    }

    #[test]
    fn two_octaves_and_profile() {
        let plan = plan_stages(6400, 6400.0, &ladder(1_000_000), 300_000).unwrap();
        assert_eq!(plan.i_star, 2);
        assert_eq!(plan.targets, vec![800, 100]);
        // Profile 2:1 fills the capacity.
        assert_eq!(plan.q_sizes, vec![200_000, 100_000]);
        // ℓ_2 = 4 ℓ_1 before rounding.
        assert_eq!(plan.piece_len, vec![31, 125]);
        assert!(plan.piece_len[0] * plan.piece_count[0] <= plan.q_sizes[0]);
        assert!(plan.q_sizes.iter().sum::<usize>() <= 300_000);
    }

    #[test]
    fn prune_thresholds_quarter_each_stage() {
        let plan = plan_stages(6400, 5000.0, &ladder(1_000_000), 300_000).unwrap();
        assert!((plan.prune_deg[0] - 40.0).abs() < 1e-12);
        assert!((plan.prune_deg[1] - 10.0).abs() < 1e-12);
    }

    #[test]
    fn capacity_error_and_clamp() {
        let err = plan_stages(2000, 2000.0, &ladder(20_000), 500).unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
        let plan = plan_stages_clamped(2000, 2000.0, &ladder(20_000), 500).unwrap();
        assert!(plan.clamped);
        assert!(plan.piece_len.iter().all(|&l| l >= 1));
        assert_eq!(plan.piece_count[0], plan.q_sizes[0]);
    }

    /// Candidates 0..4 are single vertices 0..3; joiner vertices start at 4.
    fn fixture(edges: &[(Vertex, Vertex)], n: usize) -> (CandidateFamily, Graph) {
        let family = build_candidates(&VertexPath::new((0..4).collect()), 4, 1).unwrap();
        (family, Graph::from_edges(n, edges.iter().copied()).unwrap())
    }

    #[test]
    fn two_pairs_two_paths() {
        let (family, g) = fixture(&[(4, 0), (4, 1), (5, 2), (5, 3)], 6);
        let state = PairState::from_pairs(4, [(0, 1), (2, 3)]).unwrap();
        let paths = [VertexPath::new(vec![4]), VertexPath::new(vec![5])];
        let out = run_stage(state, &[], &paths, 0, &g, &family).unwrap();
        assert_eq!(out.state.u_count(), 0);
        let assigned: Vec<_> = out.joins.iter().map(|j| ((j.a, j.b), j.path_index)).collect();
        assert_eq!(assigned, vec![((0, 1), 0), ((2, 3), 1)]);
        assert!(out.reached_target);
    }

    #[test]
    fn path_touching_one_side_fails() {
        let (family, g) = fixture(&[(4, 0)], 5);
        let state = PairState::from_pairs(4, [(0, 1)]).unwrap();
        let out = run_stage(state, &[], &[VertexPath::new(vec![4])], 0, &g, &family).unwrap();
        assert_eq!(out.failed_paths, 1);
        assert!(out.state.contains(0, 1));
        assert!(!out.reached_target);
    }

    #[test]
    fn smallest_pair_wins() {
        let (family, g) = fixture(&[(4, 0), (4, 1), (4, 2)], 5);
        let state = PairState::from_pairs(4, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let out = run_stage(state, &[], &[VertexPath::new(vec![4])], 0, &g, &family).unwrap();
        assert_eq!((out.joins[0].a, out.joins[0].b), (0, 1));
        assert_eq!(out.state.pairs().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn pruned_quota_case() {
        let (family, g) = fixture(&[], 5);
        // 4 pairs, target 1: quota 3; candidate 0 touches 3 pairs.
        let state = PairState::from_pairs(4, [(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap();
        let out = run_stage(state, &[0], &[VertexPath::new(vec![4])], 1, &g, &family).unwrap();
        assert_eq!(out.case, StageCase::PrunedQuota);
        assert_eq!(out.state.pairs().collect::<Vec<_>>(), vec![(1, 2)]);
        assert!(out.state.discarded().contains(&0));
    }

    #[test]
    fn greedy_stops_at_target() {
        let (family, g) = fixture(&[(4, 0), (4, 1), (5, 2), (5, 3), (6, 0), (6, 2)], 7);
        let state = PairState::from_pairs(4, [(0, 1), (2, 3), (0, 2)]).unwrap();
        let paths = [VertexPath::new(vec![4]), VertexPath::new(vec![5]), VertexPath::new(vec![6])];
        let out = run_stage(state, &[], &paths, 1, &g, &family).unwrap();
        assert_eq!(out.state.u_count(), 1);
        assert_eq!(out.paths_used, 2);
        assert_eq!(out.joins.len(), 2);
    }

    #[test]
    fn joiners_must_avoid_candidates() {
        let (family, g) = fixture(&[], 6);
        let state = PairState::from_pairs(4, [(0, 1)]).unwrap();
        let bad = run_stage(state.clone(), &[], &[VertexPath::new(vec![2])], 0, &g, &family);
        assert!(matches!(bad, Err(Error::Precondition(_))));
        let shared = [VertexPath::new(vec![4]), VertexPath::new(vec![4, 5])];
        assert!(run_stage(state, &[], &shared, 0, &g, &family).is_err());
    }
}
