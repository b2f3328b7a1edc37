use thiserror::Error;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element `{0}` in finite set")]
    DuplicateElement(String),
    #[error("element `{0}` is not in the domain")]
    NotInDomain(String),
    #[error("value `{value}` assigned to `{element}` is outside the codomain")]
    OutsideCodomain { element: String, value: String },
    #[error("codomains differ")]
    CodomainMismatch,
    #[error("domain and codomain do not line up: {0}")]
    DomainMismatch(&'static str),
    #[error("square does not commute at `{0}`")]
    NotCommuting(String),
    #[error("map is not injective")]
    NotMono,

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("paths are not composable: `{left_end}` does not match `{right_start}`")]
    NotComposable {
        left_end: String,
        right_start: String,
    },
    #[error("paths have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("not a graph morphism: {0}")]
    NotGraphMorphism(String),

    #[error("unknown 2-generator `{0}`")]
    UnknownGenerator(String),
    #[error("ill-typed vertical composite: target {left} differs from source {right}")]
    IllTypedVComp { left: String, right: String },
    #[error("ill-typed horizontal composite: `{left}` does not meet `{right}`")]
    IllTypedHComp { left: String, right: String },
    #[error("outside the Eckmann-Hilton fragment: {0}")]
    NotEHClass(String),

    #[error("invalid 2-generator `{indet}`: {reason}")]
    InvalidComputad { indet: String, reason: String },
    #[error("not a computad morphism: {0}")]
    NotComputadMorphism(String),
    #[error("invalid 3-generator `{indet}`: {reason}")]
    InvalidCom3 { indet: String, reason: String },
    #[error("cell pair lives at different vertices `{0}` and `{1}`")]
    NotParallel(String, String),
    #[error("generator `{0}` is not in the image of the inclusion")]
    NotInImage(String),
    #[error("degree bound {0} is too small, the witness lives at degree 2")]
    DegreeTooSmall(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
