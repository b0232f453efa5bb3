use thiserror::Error;

/// Errors surfaced by construction and solver entry points.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid mosaic {{{p},{q}}}: {reason}")]
    InvalidMosaic { p: String, q: String, reason: String },

    #[error("invalid Pell equation x^2 - {d}y^2 = {n}: {reason}")]
    InvalidPellEquation { d: String, n: String, reason: String },

    #[error("invalid modulus {modulus}: {reason}")]
    InvalidModulus { modulus: u64, reason: String },

    #[error("invalid quartic case: {0}")]
    InvalidQuarticCase(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
