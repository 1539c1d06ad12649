use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("axis index {0} out of range for dimension {1}")]
    AxisOutOfRange(usize, usize),
    #[error("singular evaluation at the origin (negative radial power or exponential envelope)")]
    SingularEvaluation,
    #[error("term carries both Gaussian and exponential envelopes; no closed form")]
    MixedEnvelope,
    #[error("divergent integral: {0}")]
    Divergent(String),
    #[error("integration requires dimension 3, got {0}")]
    NotThreeDimensional(usize),
    #[error("measure is not admissible: {0}")]
    NonAdmissibleMeasure(String),
    #[error("measure must be a single positive radial-type term for this operation")]
    UnsupportedMeasure,
    #[error("invalid quantum numbers n={0} l={1} m={2}")]
    InvalidQuantumNumbers(u32, u32, i32),
    #[error("closed form is outside its stated domain: {0}")]
    ClosedFormDomain(String),
    #[error("quadrature failed to converge after {0} node doublings")]
    QuadratureNonConvergence(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
