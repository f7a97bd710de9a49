use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported Coxeter type: {0}")]
    UnsupportedType(String),

    #[error("not a diagram automorphism: {0}")]
    NotDiagramAutomorphism(String),

    #[error("operands belong to different Weyl groups")]
    MixedSystems,

    #[error("enumeration of {what} exceeds the bound of {limit} elements")]
    BoundExceeded { what: String, limit: usize },

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("{element} is not in {quotient}")]
    NotInQuotient { element: String, quotient: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("F does not fix J: F({j}) = {image}")]
    FrobeniusDoesNotFixJ { j: String, image: String },

    /// A search the theory guarantees to succeed came back empty. This always
    /// means an implementation bug, never bad input.
    #[error("theorem violated: {0}")]
    TheoremViolation(String),

    #[error("poset axiom violated: {0}")]
    PosetAxiom(String),

    #[error("invalid symplectic data: {0}")]
    InvalidSymplectic(String),
}

pub type Result<T> = std::result::Result<T, Error>;
