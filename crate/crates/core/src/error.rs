use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown built-in algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("map has a term of degree {0}; only degree-1 maps convert to a bilinear tensor")]
    NotBilinear(u32),
    #[error("the scalar factor is identically zero")]
    ZeroScalar,
    #[error("matrix is not a derivation of {0}")]
    NotDerivation(String),
    #[error("algebra {name} has kind {kind}, a Lie algebra is required")]
    NotLie { name: String, kind: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
