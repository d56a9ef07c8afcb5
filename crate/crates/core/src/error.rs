use thiserror::Error;

/// Errors raised by group construction and the exact searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image list is not a bijection on 0..{degree}")]
    NotABijection { degree: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("malformed cycle notation: {0}")]
    CycleSyntax(String),
    #[error("group order {order} exceeds the element cap {cap}")]
    OrderCap { order: u128, cap: usize },
    #[error("subgroup count exceeds the cap {cap}")]
    SubgroupCap { cap: usize },
    #[error("coset enumeration did not close within {cap} cosets")]
    CosetCap { cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("generator letter {letter} out of range for {count} generators")]
    LetterOutOfRange { letter: usize, count: usize },
    #[error("presentation syntax error on line {line}: {message}")]
    PresentationSyntax { line: usize, message: String },
    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
