use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent {exponent} exceeds the configured bound {bound}")]
    ExponentTooLarge { exponent: u32, bound: u32 },

    #[error("coefficient at index {index} is not divisible by the divisor")]
    NotDivisibleAt { index: usize },

    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid family parameter k = {0}: must be odd and at least 3")]
    InvalidK(i64),

    #[error("index {index} out of range (valid: 1..={bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("Pell bridge broken at k = {k}: {detail}")]
    BridgeBroken { k: usize, detail: String },

    #[error("cross-check failed at k = {k}: {detail}")]
    CrossCheckFailed { k: usize, detail: String },

    #[error("invariant violated: {0}")]
    InvariantViolated(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("degenerate witness: {0}")]
    DegenerateWitness(String),

    #[error("corpus entry `{entry}` corrupted: {detail}")]
    CorpusCorrupted { entry: String, detail: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
