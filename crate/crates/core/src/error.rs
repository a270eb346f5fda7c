use thiserror::Error;

use crate::poly::Bidegree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero polynomial has no bidegree")]
    ZeroPolynomial,
    #[error("polynomial is not bihomogeneous: found bidegrees {0} and {1}")]
    NotBihomogeneous(Bidegree, Bidegree),
    #[error("bidegree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: Bidegree, found: Bidegree },
    #[error("invalid bidegree {0}: both components must be at least 1")]
    InvalidBidegree(Bidegree),
    #[error("matrix has rank {rank} over the fraction field but {rows} rows; no full-size maximal minor")]
    RankDeficient { rank: usize, rows: usize },
    #[error("S_nu is zero in degree {0}, so the matrix is empty")]
    EmptyMatrix(Bidegree),
    #[error("every determinant is zero")]
    AllZero,
    #[error("no polynomial of degree {0} vanishes on the sampled image points")]
    NoEquation(usize),
    #[error("the vanishing polynomials of degree {degree} form a space of dimension {dim}")]
    AmbiguousNullspace { degree: usize, dim: usize },
    #[error("modular reconstruction of the degree-{0} equation did not converge")]
    ReconstructionFailed(usize),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// Input errors map to exit code 1, pipeline failures to exit code 2.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::ZeroPolynomial
                | Error::NotBihomogeneous(..)
                | Error::DegreeMismatch { .. }
                | Error::InvalidBidegree(_)
                | Error::Syntax { .. }
                | Error::UnknownVariable { .. }
                | Error::Input(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
