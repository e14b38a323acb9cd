use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate model: {0}")]
    DegenerateModel(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("root finder did not converge (residual {residual:.3e})")]
    ConvergenceFailure { residual: f64 },
    #[error("critical symbol: {0}")]
    CriticalSymbol(String),
    #[error("branch-point geometry not supported: {0}")]
    UnsupportedGeometry(String),
    #[error("point {0} lies on a branch cut")]
    OnBranchCut(String),
    #[error("Fourier tail |g_max| = {tail:.3e} exceeds tolerance {tol:.1e}")]
    TailTooLarge { tail: f64, tol: f64 },
    #[error("singular values failed to pair (mismatch {0:.3e})")]
    PairingFailure(f64),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("finite chain has a zero mode at k = {0}")]
    ZeroMode(f64),
    #[error("ill-conditioned period system (condition {0:.3e})")]
    IllConditioned(f64),
    #[error("quadrature failed to converge: {0}")]
    QuadratureFailure(String),
    #[error("theta truncation needs about {0:.3e} lattice points")]
    TruncationOverflow(f64),
    #[error("theta function vanishes on the path at t = {0}")]
    ZeroOnPath(f64),
    #[error("cannot route an integration path to {0}")]
    PathRoutingFailure(String),
    #[error("no degenerating root pairs found")]
    NoDegeneratePairs,
    #[error("operation requires genus {expected}, curve has genus {found}")]
    GenusMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code: 2 for configuration problems, 4 for critical
    /// symbols, 3 for everything numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::DegenerateModel(_) | Error::Io(_) | Error::Json(_) => 2,
            Error::CriticalSymbol(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
