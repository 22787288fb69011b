use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("d = {0} is not squarefree")]
    NotSquarefree(u64),
    #[error("bad conductor f = {f} for d = {d}")]
    BadConductor { d: u64, f: u64 },
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("element has a non-zero theta coordinate over Z")]
    NotInZ,
    #[error("element is not a unit of its ring")]
    NotAUnit,
    #[error("element is not integral")]
    NotIntegral,
    #[error("determinant is not a unit, matrix is not invertible over R")]
    NotInvertibleInR,
    #[error("determinant is not a unit")]
    DetNotUnit,
    #[error("closure exceeded the cap of {0} elements")]
    GroupExceedsCap(usize),
    #[error("generator {0} has infinite order")]
    InfiniteOrderGenerator(usize),
    #[error("group is not in the catalog: {0}")]
    NotInCatalog(String),
    #[error("unknown catalog label {0}")]
    UnknownLabel(String),
    #[error("{label} is not realizable over R (known only over {field})")]
    NotRealizable { label: String, field: String },
    #[error("torsion constraint violated: {0}")]
    TorsionConstraintViolated(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("ring {0} does not support this operation")]
    UnsupportedRing(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Variant name, stable across releases.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotSquarefree(_) => "NotSquarefree",
            Error::BadConductor { .. } => "BadConductor",
            Error::RingMismatch => "RingMismatch",
            Error::NotInZ => "NotInZ",
            Error::NotAUnit => "NotAUnit",
            Error::NotIntegral => "NotIntegral",
            Error::NotInvertibleInR => "NotInvertibleInR",
            Error::DetNotUnit => "DetNotUnit",
            Error::GroupExceedsCap(_) => "GroupExceedsCap",
            Error::InfiniteOrderGenerator(_) => "InfiniteOrderGenerator",
            Error::NotInCatalog(_) => "NotInCatalog",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::NotRealizable { .. } => "NotRealizable",
            Error::TorsionConstraintViolated(_) => "TorsionConstraintViolated",
            Error::BadParameter(_) => "BadParameter",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::UnsupportedRing(_) => "UnsupportedRing",
        }
    }
}
