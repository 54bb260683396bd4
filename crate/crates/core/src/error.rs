use thiserror::Error;

/// Errors raised by graph construction, parameter derivation and extraction.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested parameters fall outside the regime the construction targets.
    #[error("regime error: {0}")]
    Regime(String),

    /// Expected degree parameter `c` must exceed 1.
    #[error("subcritical regime: c = {0} must exceed 1")]
    Subcritical(f64),

    /// The derived target order is too small to be meaningful.
    #[error("degenerate target: {0}")]
    Degenerate(String),

    /// Not enough path vertices to satisfy a request.
    #[error("capacity error: {what} needs {needed} vertices, {available} available")]
    Capacity {
        what: &'static str,
        needed: usize,
        available: usize,
    },

    /// The exhaustive search refuses graphs above its vertex cap.
    #[error("graph with {n} vertices exceeds exact-search cap {cap}")]
    TooLarge { n: usize, cap: usize },

    /// A caller-side precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Malformed input file.
    #[error("parse error: {0}")]
    Parse(String),

    /// An emitted certificate failed in-process verification.
    #[error("certificate failed verification: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
