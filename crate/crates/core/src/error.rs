//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not rational: {0}")]
    Irrational(String),
    #[error("group spec parse error at position {position}: {message}")]
    SpecParse { position: usize, message: String },
    #[error("invalid group parameters: {0}")]
    InvalidSpec(String),
    #[error("group order cap exceeded (cap {cap}): closure reached {reached} elements")]
    OrderCapExceeded { cap: usize, reached: usize },
    #[error("class count cap exceeded (cap {cap}): group has {classes} classes")]
    ClassCapExceeded { cap: usize, classes: usize },
    #[error("oracle cap exceeded: group order {order} above cap {cap}")]
    OracleCapExceeded { order: usize, cap: usize },
    #[error("ingested matrices do not define a reflection group: {0}")]
    NotReflectionGroup(String),
    #[error("Molien series does not factor as a product of 1/(1-q^d): {0}")]
    MolienFactorization(String),
    #[error("element set is not closed under conjugation")]
    NotConjugationClosed,
    #[error("character table verification failed: {0}")]
    TableVerification(String),
    #[error("eigenvector separation failed after {0} seeded retries")]
    EigenvectorSeparation(usize),
    #[error("integrality violated: {0}")]
    IntegralityViolation(String),
    #[error("cancellation identity violated: {0}")]
    CancellationViolation(String),
    #[error("phi extraction failed: {0}")]
    PhiExtraction(String),
    #[error("no regular element: {0}")]
    NoRegularElement(String),
    #[error("regular divisibility violated: {0}")]
    DivisibilityViolation(String),
    #[error("variable collision in product of forms: {0}")]
    VariableCollision(String),
    #[error("verification failure: {0}")]
    VerificationFailure(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
