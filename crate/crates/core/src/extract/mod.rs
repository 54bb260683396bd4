//! Greedy extraction of complete minors from two-round random graphs.

mod dense;
mod finalize;
mod pairs;
mod params;
mod pipeline;
mod sparse;
mod stages;

pub use dense::extract_dense;
pub use finalize::{finalize_minor, FinalMinor};
pub use pairs::{build_candidates, compute_unjoined_pairs, prune_high_degree, CandidateFamily, PairState};
pub use params::{
    dense_parameters, expected_unjoined, sparse_parameters, DenseParams, ExtractConfig, LadderSpec, SparseParams,
};
pub use pipeline::{Extraction, Regime, StageReport, TrialDiagnostics};
pub use sparse::extract_sparse;
pub use stages::{plan_stages, plan_stages_clamped, run_stage, Join, StageCase, StageOutcome, StagePlan};
