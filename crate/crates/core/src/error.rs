use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("total degree {degree} exceeds the moment cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },
    #[error("no value supplied for parameter `{0}`")]
    MissingParameter(String),
    #[error("root polishing did not converge near {0}")]
    RootPolishing(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("contraction index {r} out of range for orders {p} and {q}")]
    ContractionOrder { r: usize, p: usize, q: usize },
    #[error("orders {p} and {q} must have different parity")]
    ParityViolation { p: usize, q: usize },
    #[error("orders must satisfy p < q, got {p} and {q}")]
    OrderNotIncreasing { p: usize, q: usize },
    #[error("degenerate random variable (zero variance)")]
    Degenerate,
    #[error("cumulant order {0} not in 1..=6")]
    CumulantOrder(u32),
    #[error("multiple integrals are only defined over orthonormal (identity covariance) coordinates")]
    NonIdentityCovariance,
    #[error("covariance is not positive semidefinite at the requested point")]
    NotPositiveSemidefinite,
    #[error("covariance is not symmetric at ({0}, {1})")]
    AsymmetricCovariance(usize, usize),
    #[error("unknown kernel family `{0}`")]
    UnknownFamily(String),
}

pub type Result<T> = core::result::Result<T, Error>;
