use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),

    #[error("table is not associative: ({0}·{1})·{2} ≠ {0}·({1}·{2})")]
    NotAssociative(usize, usize, usize),
    #[error("index 0 is not a two-sided identity (row/column {0} disagrees)")]
    NoIdentity(usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("subset is not closed: {0}·{1} = {2} is missing")]
    NotClosed(usize, usize, usize),

    #[error("objects live over different algebras: {0}")]
    AlgebraMismatch(String),
    #[error("module side mismatch: {0}")]
    SideMismatch(String),
    #[error("span is not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("centralizer is not spanned by homogeneous elements")]
    NotGraded,
    #[error("algebra is not a crossed product: component {0} has no invertible element")]
    NotCrossedProduct(usize),
    #[error("conjugation by u_{0} leaves the centralizer")]
    ActionLeavesCentralizer(usize),
    #[error("module is not G-invariant (stabilizer has order {0})")]
    NotGInvariant(usize),
    #[error("module is not concentrated in degree 1")]
    NotDegreeOne,
    #[error("no unique A-linear extension from the identity component: {0}")]
    NoExtension(String),
    #[error("Morita context is not surjective")]
    NotSurjective,
    #[error("witness is not a graded bimodule isomorphism: {0}")]
    WitnessNotIso(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}
