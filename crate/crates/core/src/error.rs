use thiserror::Error;

/// Errors returned by the codec, decoders and simulation harness.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("block length {0} is not a power of two")]
    InvalidBlockLength(usize),

    #[error("information length {k} out of range for block length {n}")]
    InvalidInfoLength { n: usize, k: usize },

    #[error("initial Bhattacharyya value {0} must lie in (0, 1)")]
    InvalidDesignParam(f64),

    #[error("length {got} does not match expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("nonzero bit at frozen position {0}")]
    NonZeroFrozenBit(usize),

    #[error("non-binary value {value} at index {index}")]
    NonBinaryValue { index: usize, value: u8 },

    #[error("noise variance must be positive, got {0}")]
    InvalidVariance(f64),

    #[error("max_iter must be at least 1")]
    ZeroIterations,

    #[error("BP state has no completed iteration")]
    NoIteration,

    #[error("invalid latency parameters: {0}")]
    InvalidLatencyParams(String),

    #[error("processing element mode {mode:?} not valid for {block} block")]
    ModeMismatch {
        mode: crate::pe::PeMode,
        block: &'static str,
    },

    #[error("malformed frozen-mask file: {0}")]
    MaskFormat(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
