//! Steps shared by the dense and sparse extractors once the random
//! graphs and the two long paths exist.

use serde::{Deserialize, Serialize};

use crate::certificate::MinorCertificate;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::path::{segment_path, VertexPath};

use super::finalize::finalize_minor;
use super::pairs::{build_candidates, compute_unjoined_pairs};
use super::params::{expected_unjoined, LadderSpec};
use super::stages::{plan_stages, plan_stages_clamped, run_stage, StageCase, StagePlan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Dense,
    Sparse,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Dense => "dense",
            Regime::Sparse => "sparse",
        })
    }
}

/// What happened in one stage of the ladder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageReport {
    pub stage: usize,
    pub start: usize,
    pub target: usize,
    pub end: usize,
    pub prune_threshold: f64,
    pub pruned: usize,
    pub case: StageCase,
    pub dropped_pairs: usize,
    pub joined: usize,
    pub failed_paths: usize,
    pub paths_available: usize,
    pub paths_used: usize,
    pub reached_target: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialDiagnostics {
    pub regime: Regime,
    pub n: usize,
    pub edge_count: usize,
    /// The order the parameters aim for.
    pub target_order: usize,
    /// Planned candidate count and size.
    pub k_prime: usize,
    pub t: usize,
    /// Candidate count and size actually used after fitting to the path.
    pub k_used: usize,
    pub t_used: usize,
    pub path_len: usize,
    pub joiner_len: usize,
    pub u0: usize,
    pub expected_u0: f64,
    /// Stages were skipped and the minor assembled by deletion alone.
    pub shortcut: bool,
    pub plan: Option<StagePlan>,
    pub stages: Vec<StageReport>,
    pub discarded: usize,
    pub cover: usize,
    pub order: usize,
    pub warnings: Vec<String>,
}

/// A verified certificate together with the graph it lives in.
#[derive(Debug, Clone)]
pub struct Extraction {
    pub certificate: MinorCertificate,
    pub diagnostics: TrialDiagnostics,
    pub graph: Graph,
}

pub(crate) struct Inputs<'a> {
    pub regime: Regime,
    pub host: &'a Graph,
    pub second_round: &'a Graph,
    pub candidate_path: &'a VertexPath,
    pub joiner_path: VertexPath,
    pub target_order: usize,
    pub k_prime: usize,
    pub t: usize,
    /// Probability of a second-round edge between two candidate vertices.
    pub p_second: f64,
    /// Skip the ladder when `U₀ ≤ shortcut_coeff · k'`.
    pub shortcut_coeff: f64,
    pub ladder: &'a dyn Fn(usize) -> LadderSpec,
    pub warnings: Vec<String>,
}

/// Fit `count` candidates of `size` vertices into a path of `len`
/// vertices: keep the size and drop candidates if needed, and shrink the
/// size only when fewer than two candidates would remain.
pub(crate) fn fit_candidates(len: usize, count: usize, size: usize) -> Option<(usize, usize)> {
    if len >= count * size {
        return Some((count, size));
    }
    if len / size >= 2 {
        return Some((len / size, size));
    }
    if len >= 2 { Some((2, len / 2)) } else { None }
}

pub(crate) fn run(mut inp: Inputs<'_>) -> Result<(MinorCertificate, TrialDiagnostics)> {
    let path_len = inp.candidate_path.len();
    let (k_used, t_used) = fit_candidates(path_len, inp.k_prime, inp.t)
        .ok_or_else(|| Error::Degenerate(format!("candidate path has only {path_len} vertices")))?;
    if (k_used, t_used) != (inp.k_prime, inp.t) {
        inp.warnings.push(format!(
            "path of {path_len} vertices holds {k_used} candidates of size {t_used} instead of {} of size {}",
            inp.k_prime, inp.t
        ));
    }
    let family = build_candidates(inp.candidate_path, k_used, t_used)?;
    let mut state = compute_unjoined_pairs(&family, inp.second_round)?;
    let u0 = state.u_count();
    let expected_u0 = expected_unjoined(k_used, t_used, inp.p_second);

    let mut diag = TrialDiagnostics {
        regime: inp.regime,
        n: inp.host.vertex_count(),
        edge_count: inp.host.edge_count(),
        target_order: inp.target_order,
        k_prime: inp.k_prime,
        t: inp.t,
        k_used,
        t_used,
        path_len,
        joiner_len: inp.joiner_path.len(),
        u0,
        expected_u0,
        shortcut: false,
        plan: None,
        stages: Vec::new(),
        discarded: 0,
        cover: 0,
        order: 0,
        warnings: Vec::new(),
    };

    let mut joins = Vec::new();
    if u0 as f64 <= inp.shortcut_coeff * k_used as f64 {
        diag.shortcut = true;
    } else {
        let ladder = (inp.ladder)(k_used);
        let capacity = inp.joiner_path.len();
        let plan = match plan_stages(u0, expected_u0, &ladder, capacity) {
            Ok(plan) => plan,
            Err(Error::Capacity { .. }) => {
                let plan = plan_stages_clamped(u0, expected_u0, &ladder, capacity)?;
                inp.warnings.push(format!(
                    "joiner path of {capacity} vertices is too short for the ladder; stages use single-vertex joiners"
                ));
                plan
            }
            Err(e) => return Err(e),
        };

        let pieces = segment_path(&inp.joiner_path, &plan.q_sizes)?;
        for (i, q) in pieces.iter().enumerate() {
            let stage = i + 1;
            let len = plan.piece_len[i];
            let count = plan.piece_count[i].min(q.len() / len);
            let paths = segment_path(q, &vec![len; count])?;
            let threshold = plan.prune_deg[i];
            let pruned = state.high_degree(threshold);
            let start = state.u_count();
            let target = plan.targets[i];
            let out = run_stage(state, &pruned, &paths, target, inp.host, &family)?;
            diag.stages.push(StageReport {
                stage,
                start,
                target,
                end: out.state.u_count(),
                prune_threshold: threshold,
                pruned: pruned.len(),
                case: out.case,
                dropped_pairs: out.dropped_pairs,
                joined: out.joins.len(),
                failed_paths: out.failed_paths,
                paths_available: paths.len(),
                paths_used: out.paths_used,
                reached_target: out.reached_target,
            });
            joins.extend(out.joins);
            state = out.state;
        }
        diag.plan = Some(plan);
    }

    let minor = finalize_minor(&family, &state, &joins, inp.host)?;
    diag.discarded = state.discarded().len();
    diag.cover = minor.cover.len();
    diag.order = minor.certificate.order;
    if diag.order < 2 {
        inp.warnings.push(format!("degenerate minor of order {}", diag.order));
    }
    diag.warnings = inp.warnings;
    Ok((minor.certificate, diag))
}
