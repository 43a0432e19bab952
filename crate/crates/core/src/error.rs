use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image sequence is not a bijection on 0..{0}")]
    NotAPermutation(usize),
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("group exceeds the element cap of {0}")]
    GroupTooLarge(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of size {0} exceeds the supported maximum")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("no valid action of C_{k} on C_{m} via x -> x^{g}")]
    NoValidAction { m: u64, k: u64, g: u64 },
    #[error("matrix does not have multiplicative order {0}")]
    WrongMatrixOrder(u64),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("construction invariant violated: {0}")]
    ConstructionInvariantViolated(String),
    #[error("element is not a member of the group")]
    NotAMember,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a subgroup of the given group")]
    NotASubgroup,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;
