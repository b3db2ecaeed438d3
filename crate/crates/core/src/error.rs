use thiserror::Error;

/// Errors raised by the envelope, solver and transform routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree must be at least 2, got {0}")]
    InvalidDegree(u32),

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("family parameters coincide (x = y = {0})")]
    CoincidentParameters(f64),

    #[error("p = {p} is outside the envelope domain for odd n = {n} (requires p >= 0)")]
    OutsideDomain { n: u32, p: f64 },

    #[error("the minus branch exists only for odd degree, got n = {0}")]
    NoMinusBranch(u32),

    #[error("line family is degenerate at x = {x}: slopes coincide for step {eps}")]
    DegenerateFamily { x: f64, eps: f64 },

    #[error("numeric envelope did not converge at x = {x} (error estimate {estimate})")]
    NonConvergence { x: f64, estimate: f64 },

    #[error("root refinement did not reach tolerance {tol} within {iterations} iterations")]
    ToleranceNotAchieved { tol: f64, iterations: usize },

    #[error("no sign change of g on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed sampling: {0}")]
    MalformedSampling(String),

    #[error("sampled function is not convex")]
    NotConvex,

    #[error("conjugate of x^{0} is only defined here for even degree")]
    OddMonomial(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
