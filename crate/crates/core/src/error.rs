use alloc::string::String;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero input")]
    ZeroInput,
    #[error("degenerate resultant")]
    DegenerateResultant,
    #[error("norm of zero")]
    NormOfZero,
    #[error("pole or zero at {0}")]
    PoleOrZero(String),
    #[error("unsupported point field: {0}")]
    UnsupportedPointField(String),
    #[error("sections not transverse")]
    NotTransverse,
    #[error("not finite over base: {0}")]
    NotFiniteOverBase(String),
    #[error("common component: {0}")]
    CommonComponent(String),
    #[error("not principal on chart {0}")]
    NotPrincipal(String),
    #[error("cover mismatch")]
    CoverMismatch,
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("non-proper intersection over fiber {0}")]
    NonProper(String),
    #[error("improper middle intersection")]
    ImproperComposition,
    #[error("not a chain map")]
    NotChainMap,
    #[error("not irreducible: {0}")]
    NotIrreducible(String),
    #[error("singular curve")]
    SingularCurve,
    #[error("point not on curve")]
    NotOnCurve,
    #[error("field mismatch")]
    FieldMismatch,
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
