use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("edge ({u}, {v}) has non-positive or non-finite weight {weight}")]
    BadWeight { u: usize, v: usize, weight: f64 },

    #[error("vertex id {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("conductance is undefined for the empty set and for V")]
    TrivialSet,

    #[error("conductance is undefined: the smaller side has zero volume")]
    ZeroVolume,

    #[error("expected {expected} values, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("x^T D x = 0, Rayleigh quotient undefined")]
    ZeroNorm,

    #[error("vertex {0} has zero degree")]
    IsolatedVertex(usize),

    #[error("mu = {0} is outside [0, 1/2]")]
    InvalidMu(f64),

    #[error("n = {n} exceeds the enumeration cap {cap}; use the sweep heuristic instead")]
    TooLarge { n: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("G(n, p) sample not connected after {0} attempts")]
    NotConnected(usize),

    #[error("no vertex set has volume inside the mu = {0} window")]
    Infeasible(f64),

    #[error("{0}")]
    Unsupported(String),

    #[error("feasible sampler did not converge after {0} attempts")]
    SamplerFailed(usize),

    #[error("empty input")]
    EmptyInput,

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = core::result::Result<T, Error>;
