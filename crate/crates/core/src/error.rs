use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("Gamma pole at z = {re} + {im}i")]
    Pole { re: f64, im: f64 },
    #[error("overflow: log-magnitude {0} is not representable")]
    Overflow(f64),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("invalid argument: {0}")]
    Domain(String),
    #[error("dimension {0} not supported (N <= 3)")]
    Dimension(usize),
    #[error("contour crosses a singularity: {0}")]
    Contour(String),
    #[error("integration failed: {0}")]
    Integration(String),
}

pub type Result<T> = std::result::Result<T, Error>;
