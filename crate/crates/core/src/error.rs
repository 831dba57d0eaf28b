use thiserror::Error;

use crate::algebra::Regime;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate parameter: c = {c} lies within 1e-9 of the excluded value 1")]
    DegenerateParameter { c: f64 },

    #[error("wrong regime: operation requires the {expected} algebra, parameters are {found}")]
    WrongRegime { expected: Regime, found: Regime },

    #[error("element is not invertible: s = t = 0")]
    NotInvertible,

    #[error("grid too small: {nx}x{ny} points, need at least {min} per axis")]
    GridTooSmall { nx: usize, ny: usize, min: usize },

    #[error("polynomial degree {degree} exceeds the cap of {cap}")]
    DegreeOverflow { degree: usize, cap: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
