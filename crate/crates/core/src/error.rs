//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A kinematic configuration with a vanishing mode energy (1/√ω blows up).
    #[error("degenerate kinematics: {0}")]
    DegenerateKinematics(String),

    /// Register or matrix size beyond the configured dense caps.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("configuration error: {0}")]
    Config(String),

    /// An occupation configuration violating the encoding ranges.
    #[error("invalid occupation config: {0}")]
    InvalidConfig(String),

    /// Requested a closed form outside the case it covers.
    #[error("not covered: {0}")]
    NotCovered(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
