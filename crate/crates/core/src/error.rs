use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed WAV header: {0}")]
    MalformedHeader(String),

    #[error("unsupported encoding: {0}")]
    UnsupportedEncoding(String),

    #[error("audio stream has no channels or no samples")]
    EmptyStream,

    #[error("invalid sample data: {0}")]
    InvalidSample(String),

    #[error(
        "input too short: {samples} samples, need at least {frame_length} for one analysis frame"
    )]
    InputTooShort { samples: usize, frame_length: usize },

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot normalize a zero vector")]
    ZeroVector,

    #[error("frequency must be positive, got {0}")]
    NonPositiveFrequency(f64),

    #[error("chroma vector must be normalized before correlation")]
    UnnormalizedChroma,

    #[error("empty chromagram")]
    EmptyChromagram,

    #[error("invalid tone: {0}")]
    InvalidTone(String),

    #[error("profile file: {0}")]
    ProfileParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
