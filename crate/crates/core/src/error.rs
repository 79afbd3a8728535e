use thiserror::Error;

/// Every failure the library can report. The CLI maps each variant onto an exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("NOT_NILPOTENT: A_0 - theta*I is not nilpotent")]
    NotNilpotent,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("UNSUPPORTED: {0}")]
    Unsupported(String),
    #[error("NO_ALGORITHM: {0}")]
    NoAlgorithm(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("singular matrix")]
    Singular,
    #[error("bad prime {0}: entry not integral")]
    BadPrime(String),
    #[error("NO_SIEGEL: leading block is not a basis")]
    NoSiegel,
    #[error("NOT_DEFINED: gamma11 + gamma12*S is singular")]
    NotDefined,
    #[error("not a lattice: {0}")]
    NotLattice(String),
    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("DIVERGENT: successive approximation does not converge")]
    Divergent,
    #[error("UNDECIDED: {0}")]
    Undecided(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("exponent denominator exceeds the configured s-cap")]
    SCapExceeded,
    #[error("coefficient field degree {needed} exceeds cap {cap}")]
    FieldCap { needed: u32, cap: u32 },
    #[error("coefficient field must grow to degree {0}")]
    NeedExtension(u32),

    #[error("internal defect: {0}")]
    Defect(String),
}

impl Error {
    /// Process exit code for the CLI: 2 validation, 3 precision/undecided, 4 parse, 5 defect.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 4,
            Error::Divergent
            | Error::Undecided(_)
            | Error::PrecisionExhausted(_)
            | Error::SCapExceeded
            | Error::FieldCap { .. }
            | Error::NeedExtension(_) => 3,
            Error::Defect(_) => 5,
            _ => 2,
        }
    }

    /// Short machine-readable tag used in JSON records.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "PARSE",
            Error::NotNilpotent => "NOT_NILPOTENT",
            Error::SizeMismatch(_) => "SIZE_MISMATCH",
            Error::Unsupported(_) => "UNSUPPORTED",
            Error::NoAlgorithm(_) => "NO_ALGORITHM",
            Error::InvalidArgument(_) => "INVALID_ARGUMENT",
            Error::Precondition(_) => "PRECONDITION",
            Error::Singular => "SINGULAR",
            Error::BadPrime(_) => "BAD_PRIME",
            Error::NoSiegel => "NO_SIEGEL",
            Error::NotDefined => "NOT_DEFINED",
            Error::NotLattice(_) => "NOT_LATTICE",
            Error::TooLarge(_) => "TOO_LARGE",
            Error::Divergent => "DIVERGENT",
            Error::Undecided(_) => "UNDECIDED",
            Error::PrecisionExhausted(_) => "PRECISION_EXHAUSTED",
            Error::SCapExceeded => "S_CAP",
            Error::FieldCap { .. } => "FIELD_CAP",
            Error::NeedExtension(_) => "NEED_EXTENSION",
            Error::Defect(_) => "DEFECT",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
