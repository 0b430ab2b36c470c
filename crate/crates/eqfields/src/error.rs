//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("no derivation configured on this field")]
    NoDerivation,
    #[error("field descriptor mismatch")]
    DescriptorMismatch,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("wrong field descriptor: {0}")]
    WrongDescriptor(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("grade mismatch: {0}")]
    GradeMismatch(String),
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("arity error: {0}")]
    Arity(String),
    #[error("illegal construct for language {lang}: {what}")]
    LanguageViolation { lang: String, what: String },
    #[error("variable hygiene violation: {0}")]
    Hygiene(String),
    #[error("input is not a term equation")]
    NotTermEquation,
    #[error("input is not lambda-tame")]
    NotLambdaTame,
    #[error("input is not delta-tame")]
    NotDeltaTame,
    #[error("input is not a tame formula")]
    NotTame,
    #[error("shape violation: {0}")]
    ShapeViolation(String),
    #[error("formula language does not match oracle kind")]
    LanguageMismatch,
    #[error("undecidable shape: {0}")]
    UndecidableShape(String),
    #[error("point does not assign variable {0}")]
    MissingAssignment(String),
    #[error("generators must be homogeneous of the stated degree")]
    InhomogeneousInput,
    #[error("degree {given} is below the zeta-degree {needed}")]
    DegreeTooLow { given: usize, needed: usize },
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error("bad oracle spec: {0}")]
    OracleSpec(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
