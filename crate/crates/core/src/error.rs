use thiserror::Error;

/// Errors raised by the cipher, the permutation engine and the verifier.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("word width mismatch: {left} bits vs {right} bits")]
    WidthMismatch { left: u32, right: u32 },

    #[error("invalid word width {0}: must lie in 2..=64")]
    InvalidWidth(u32),

    #[error("value {value:#x} does not fit in {width} bits")]
    ValueOutOfRange { value: u64, width: u32 },

    #[error("rotation extent {r} out of range for {n}-bit words")]
    RotationOutOfRange { r: u32, n: u32 },

    #[error("subgroup exponent {q} out of range for {n}-bit words")]
    ExponentOutOfRange { q: u32, n: u32 },

    #[error("invalid cipher parameters: {0}")]
    InvalidParams(String),

    #[error("invalid S-box table {index}: {reason}")]
    InvalidTable { index: usize, reason: String },

    #[error("malformed spec file: {0}")]
    MalformedSpec(String),

    #[error("{what}: degree {degree} exceeds the {cap_name} cap of {cap}")]
    DegreeCap {
        what: &'static str,
        cap_name: &'static str,
        degree: u64,
        cap: u64,
    },

    #[error("image table is not a permutation: {0}")]
    NotPermutation(String),

    #[error("group is not transitive: orbit of 0 has {orbit} of {degree} points")]
    Intransitive { orbit: usize, degree: usize },

    #[error("inconsistent Goursat triple: {0}")]
    InconsistentTriple(String),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("{0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
