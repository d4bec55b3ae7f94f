use thiserror::Error;

use crate::ring::Branch;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("energy must be positive and finite, got lambda = {0}")]
    NonPositiveEnergy(f64),

    #[error("invalid Rashba coupling alpha = {0}; expected a finite value >= 0")]
    InvalidAlpha(f64),

    #[error("resonance index n = {n} is outside the range of the {branch} branch")]
    InvalidIndex { branch: Branch, n: u32 },

    #[error("k = {k} lies within the resonance guard of the {branch} branch (|cos(kappa*pi)| = {cos:e})")]
    ResonanceProximity { branch: Branch, k: f64, cos: f64 },

    #[error("linear system is singular (pivot {pivot:e} at column {column}, scale {scale:e})")]
    SingularSystem {
        column: usize,
        pivot: f64,
        scale: f64,
    },

    #[error("invalid device: {0}")]
    InvalidDevice(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
