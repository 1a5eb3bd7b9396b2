use thiserror::Error;

use crate::arith::FieldDesc;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldDesc, FieldDesc),
    #[error("{0} is not a prime in [2, 2^31)")]
    NotPrime(u64),
    #[error("operation requires a prime field, got {0}")]
    UnsupportedField(FieldDesc),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("subspaces live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("trace-form radical needs characteristic 0 or p > dim (p = {p}, dim = {dim})")]
    UnsupportedCharacteristic { p: u64, dim: usize },
    #[error("ideal is not two-sided")]
    NotTwoSided,
    #[error("subspace is not a left ideal")]
    NotLeftIdeal,
    #[error("ideal is the whole algebra")]
    ImproperIdeal,
    #[error("matrix set is not closed under composition")]
    NotClosed,
    #[error("matrix span does not contain the identity")]
    NoIdentity,
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("modules are over different algebras")]
    AlgebraMismatch,
    #[error("module is zero")]
    ZeroModule,
    #[error("subspace is not invariant under the action")]
    NotInvariant,
    #[error("matrix does not commute with the action")]
    NotEndomorphism,
    #[error("the list of simple modules is empty")]
    IncompleteSimples,
    #[error("module is not certified simple")]
    NotCertifiedSimple,
    #[error("element is not idempotent modulo the radical")]
    NotApproxIdempotent,
    #[error("ideal is not nilpotent")]
    NotNilpotent,
    #[error("search budget exhausted: {0}")]
    SearchBudgetExceeded(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error("certificate rejected: {0}")]
    CertificateRejected(String),
    #[error("parse error: {0}")]
    Parse(String),
}
