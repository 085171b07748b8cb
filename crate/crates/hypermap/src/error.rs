use thiserror::Error;

/// Domain errors raised by hypermap construction, validation and the canonical
/// orientation machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypermapError {
    #[error("permutation has wrong length or is not a bijection: {0}")]
    NotPermutation(String),
    #[error("alpha is not an involution at dart {0}")]
    NotInvolution(usize),
    #[error("alpha has a fixed point at dart {0}")]
    HasFixedPoint(usize),
    #[error("the map is not connected")]
    NotConnected,
    #[error("the map is not planar (genus {0})")]
    NotPlanar(usize),
    #[error("the faces admit no proper dark/light coloring")]
    NotEulerian,
    #[error("the outer face is not simple")]
    OuterFaceNotSimple,
    #[error("illegal orientation: {0}")]
    IllegalOrientation(String),
    #[error("orientation is not in the class required by the root: {0}")]
    WrongClass(String),
    #[error("negative demand at star-graph node {0}")]
    NegativeDemand(String),
    #[error("no hyperflow exists; violating vertex set {certificate:?}")]
    Infeasible { certificate: Vec<usize> },
    #[error("charge function does not fit: {0}")]
    NotFitting(String),
    #[error("ingirth is {}, expected {expected}", found.map_or_else(|| "undefined".to_string(), |g| g.to_string()))]
    IngirthMismatch {
        expected: usize,
        found: Option<usize>,
    },
    #[error("face set is not a light region: {0}")]
    NotLightRegion(String),
    #[error("invalid hypermobile: {0}")]
    InvalidMobile(String),
    #[error("invalid root: {0}")]
    InvalidRoot(String),
}

pub type Result<T> = std::result::Result<T, HypermapError>;
