use thiserror::Error;

use crate::ratmat::MatrixError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix has no Hirano inverse: A - A^3 is not nilpotent")]
    NotHirano,
    #[error("matrix has no strongly Drazin inverse: A - A^2 is not nilpotent")]
    NotStronglyDrazin,
    #[error("supplied inverse fails the Drazin defining equations for {0}")]
    BadInverse(String),
    #[error("internal certificate check failed: {0}")]
    CertificateFailure(String),
    #[error("Newton iteration exceeded its cap of {0} steps")]
    IterationCapExceeded(usize),
    #[error("Newton derivative became singular (precondition violated)")]
    SingularNewtonStep,
    #[error("theorem {id} expects {expected} matrices, got {got}")]
    ArityMismatch { id: String, expected: usize, got: usize },
    #[error("witness split requires the hypotheses of {0} to hold")]
    HypothesesFail(String),
    #[error("instance generation failed for {id} after {retries} retries")]
    GenerationFailure { id: String, retries: usize },
    #[error("unknown theorem id {0:?}")]
    UnknownTheoremId(String),
    #[error("unknown hypothesis {hypothesis:?} for theorem {id}")]
    UnknownHypothesis { id: String, hypothesis: String },
}

pub type Result<T> = std::result::Result<T, Error>;
