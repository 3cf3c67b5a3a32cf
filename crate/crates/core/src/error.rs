use thiserror::Error;

/// Which Reed-Solomon layer of a CIRC frame failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layer {
    Inner,
    Outer,
    /// A block decoded on its own, outside any frame.
    Standalone,
}

impl std::fmt::Display for Layer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Layer::Inner => f.write_str("inner (24,16)"),
            Layer::Outer => f.write_str("outer (32,24)"),
            Layer::Standalone => f.write_str("standalone"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("character at position {0} is not 7-bit ASCII")]
    NonAsciiCharacter(usize),
    #[error("bit length {0} is not a multiple of 7")]
    LengthNotMultipleOf7(usize),
    #[error("bit length {len} is not a multiple of the group size {group}")]
    LengthNotMultipleOfGroup { len: usize, group: usize },
    #[error("payload of {0} units is too large")]
    PayloadTooLarge(usize),

    #[error("strategy is empty")]
    EmptyStrategy,
    #[error("strategy exhausted at step {0}")]
    StrategyExhausted(usize),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("strategy term {term} at step {step} is outside the {size}-cell system")]
    TermOutOfRange {
        step: usize,
        term: usize,
        size: usize,
    },

    #[error("invalid key: {0}")]
    InvalidKey(String),

    #[error("invalid code parameters ({n},{k})")]
    InvalidCode { n: usize, k: usize },
    #[error("block length {actual} does not match the code (expected {expected})")]
    WrongBlockLength { expected: usize, actual: usize },
    #[error("uncorrectable block {index} in the {layer} layer")]
    UncorrectableBlock { layer: Layer, index: usize },
    #[error("malformed frame: {0}")]
    MalformedFrame(String),

    #[error("image {width}x{height} is not divisible by 2^{levels}")]
    DimensionNotDyadic {
        width: usize,
        height: usize,
        levels: usize,
    },
    #[error("inconsistent pyramid: {0}")]
    InconsistentPyramid(String),
    #[error("bad selector: {0}")]
    BadSelector(String),
    #[error("bit index {0} outside the most-significant range 4..=7")]
    BadBitIndex(u8),
    #[error("state has {actual} cells, selector addresses {expected}")]
    SizeMismatch { expected: usize, actual: usize },
    #[error("image pixel buffer holds {actual} values, {expected} expected")]
    BadImageBuffer { expected: usize, actual: usize },

    #[error("payload needs {needed} bit slots, image offers {available}")]
    CapacityExceeded { needed: usize, available: usize },
    #[error("placement plan exhausted after {draws} draws with {placed} of {wanted} bits placed")]
    PlanExhausted {
        draws: usize,
        placed: usize,
        wanted: usize,
    },

    #[error("region lies outside the {width}x{height} image")]
    OutOfBounds { width: usize, height: usize },
    #[error("invalid attack parameter: {0}")]
    InvalidAttack(String),

    #[error("malformed PGM header: {0}")]
    MalformedHeader(String),
    #[error("unsupported PGM maxval {0} (only 255 is accepted)")]
    UnsupportedMaxval(u32),
    #[error("PGM raster truncated: {expected} bytes expected, {actual} present")]
    TruncatedRaster { expected: usize, actual: usize },
}

impl Error {
    /// Stable short code, used by the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonAsciiCharacter(_) => "E101",
            Error::LengthNotMultipleOf7(_) => "E102",
            Error::LengthNotMultipleOfGroup { .. } => "E103",
            Error::PayloadTooLarge(_) => "E104",
            Error::EmptyStrategy => "E201",
            Error::StrategyExhausted(_) => "E202",
            Error::DimensionMismatch { .. } => "E203",
            Error::TermOutOfRange { .. } => "E204",
            Error::InvalidKey(_) => "E301",
            Error::InvalidCode { .. } => "E401",
            Error::WrongBlockLength { .. } => "E402",
            Error::UncorrectableBlock { .. } => "E403",
            Error::MalformedFrame(_) => "E404",
            Error::DimensionNotDyadic { .. } => "E501",
            Error::InconsistentPyramid(_) => "E502",
            Error::BadSelector(_) => "E503",
            Error::BadBitIndex(_) => "E504",
            Error::SizeMismatch { .. } => "E505",
            Error::BadImageBuffer { .. } => "E506",
            Error::CapacityExceeded { .. } => "E601",
            Error::PlanExhausted { .. } => "E602",
            Error::OutOfBounds { .. } => "E701",
            Error::InvalidAttack(_) => "E702",
            Error::MalformedHeader(_) => "E801",
            Error::UnsupportedMaxval(_) => "E802",
            Error::TruncatedRaster { .. } => "E803",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
