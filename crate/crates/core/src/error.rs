use thiserror::Error;

use crate::quiver::Vertex;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("unknown arrow id `{0}`")]
    UnknownArrow(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),

    #[error("element is not homogeneous in homological degree (found {0} and {1})")]
    Inhomogeneous(i32, i32),

    #[error("element has homological degree {found}, expected {expected}")]
    DegreeMismatch { expected: i32, found: i32 },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid McKay data: {0}")]
    InvalidMcKay(String),

    #[error("invalid superpotential: {0}")]
    InvalidPotential(String),

    #[error("invalid differential: {0}")]
    InvalidDifferential(String),

    #[error("internal decomposition failure: {0}")]
    Decomposition(String),

    #[error("path enumeration exceeded the cap of {cap} paths in bidegree (h={hdeg}, a={adeg})")]
    ResourceCap { cap: usize, hdeg: i32, adeg: u32 },

    #[error("differential is not homogeneous for the Adams grading at arrow `{0}`")]
    NotAdamsGraded(String),

    #[error("generator `{0}` has no image under the supplied map")]
    UnmappedGenerator(String),

    #[error("hypothesis check failed: {0}")]
    Hypothesis(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
