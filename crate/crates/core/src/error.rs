use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid algebra parameters: {0}")]
    InvalidSpec(String),
    #[error("super-Jacobi self-check failed: {0}")]
    JacobiFailure(String),
    #[error("construction self-check failed: {0}")]
    SelfCheck(String),
    #[error("element does not lie in the even part")]
    NotInEvenPart,
    #[error("invalid orbit label: {0}")]
    InvalidLabel(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("degree map is not Borel-compatible: {0}")]
    NotBorelCompatible(String),
    #[error("highest weight is not dominant for its Levi block")]
    NotDominant,
    #[error("leading weight {0} is not Levi-dominant")]
    NonDominantLeader(String),
    #[error("negative coefficient at weight {0} during decomposition")]
    NegativeResidual(String),
    #[error("numeric overflow: {0}")]
    Overflow(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
