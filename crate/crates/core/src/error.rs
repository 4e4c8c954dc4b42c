use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported group label `{0}`")]
    UnsupportedLabel(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("weight {0:?} is not dominant regular (all coordinates must be >= 1)")]
    NotRegularDominant(Vec<i64>),
    #[error("element is not elliptic")]
    NotElliptic,
    #[error("element is not elliptic regular")]
    NotEllipticRegular,
    #[error("no canonical torsion point for this class; supply one with a modulus and coroot vector")]
    MissingTorsionPoint,
    #[error("torsion point rejected: {0}")]
    BadTorsionPoint(String),
    #[error("cyclotomic result is not rational")]
    NonRationalResult,
    #[error("trace {0} is not an integer")]
    NonIntegralTrace(String),
    #[error("restricted roots do not lie in a pointed cone")]
    PointednessFailure,
    #[error("dimension {dim} exceeds cap {cap}")]
    CapExceeded { dim: String, cap: u128 },
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("unknown class `{name}`; known names: {known}")]
    UnknownClass { name: String, known: String },
    #[error("classes need a user torsion point: {0}")]
    UnsupportedClass(String),
    #[error("non-integral multiplicity for {0}")]
    NonIntegralMultiplicity(String),
    #[error("no character table shipped for {0}")]
    MissingTable(String),
    #[error("character table invalid: {0}")]
    BadTable(String),
    #[error("coordinates outside the table domain: {0}")]
    OutsideDomain(String),
    #[error("golden data inconsistent: {0}")]
    GoldenData(String),
    #[error("|R_t+| = {rt} exceeds |R_y+| = {ry}")]
    InequalityStrict { rt: usize, ry: usize },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
