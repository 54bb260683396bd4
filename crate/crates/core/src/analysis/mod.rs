//! Bounds, certificate checks and the exhaustive oracle.

pub mod bounds;
pub mod exact;
pub mod first_moment;
pub mod verify;

pub use bounds::{simplified_ccl_dense, edge_bound_ccl, sparse_bounds, theoretical_ccl_dense};
pub use exact::{exact_ccl, exact_ccl_with_cap, DEFAULT_EXACT_CAP};
pub use first_moment::{first_moment_log_bound, first_negative_order, BoundReport, Verdict};
pub use verify::{verify_minor, MinorViolation};
