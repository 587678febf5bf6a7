use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("conductor {m} exceeds cap {cap}; raise the cap or use float mode (decimal t)")]
    ConductorTooLarge { m: u64, cap: u32 },
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("exact domain required")]
    ExactDomainRequired,
    #[error("degree cap exceeded: iterate degree {degree} exceeds cap {cap}")]
    DegreeCapExceeded { degree: u64, cap: u64 },
    #[error("division is not exact; remainder {remainder}")]
    NotExactDivision { remainder: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("degenerate composition: every component vanishes identically")]
    DegenerateComposition,
    #[error("zero map")]
    ZeroMap,
    #[error("zero vector is not a projective point")]
    ZeroPoint,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}
