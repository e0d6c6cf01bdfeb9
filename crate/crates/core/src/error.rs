use std::fmt;

/// Failure to read the compact sign/binal notation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where the problem was detected.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    NonBinaryDigit(char),
    MissingSign,
    MissingIntegerDigits,
    UnexpectedChar(char),
    TrailingInput,
}

impl ParseError {
    pub(crate) fn new(position: usize, kind: ParseErrorKind) -> Self {
        ParseError { position, kind }
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Empty => write!(f, "empty input"),
            ParseErrorKind::NonBinaryDigit(c) => write!(f, "non-binary digit '{c}'"),
            ParseErrorKind::MissingSign => write!(f, "missing sign character"),
            ParseErrorKind::MissingIntegerDigits => write!(f, "expected binary digits before the sign"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character '{c}'"),
            ParseErrorKind::TrailingInput => write!(f, "trailing input"),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ParseErrorKind::Empty => write!(f, "{}", self.kind),
            _ => write!(f, "{} at position {}", self.kind, self.position),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("digit interval [{lo}, {hi}] must contain the binal point")]
    BadInterval { lo: i64, hi: i64 },
    #[error("bit string has {got} digits but the interval needs {expected}")]
    BitCount { expected: usize, got: usize },
    #[error("accuracy must be at least 1")]
    BadAccuracy,
    #[error("magnitude is smaller than 2^{exponent}")]
    Underflow { exponent: i64 },
    #[error("the l-inverse needs a positive nonzero real state, got {0}")]
    NotPositive(String),
    #[error("division by a zero state")]
    DivisionByZero,
    #[error("zero divisor term {term} in superposition")]
    ZeroDivisorTerm { term: String },
    #[error("superposition has no terms")]
    EmptySuperposition,
    #[error("non-finite amplitude for term {term}")]
    NonFiniteAmplitude { term: String },
    #[error("state is not normalized: squared norm {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },
    #[error("probabilities must be non-negative and sum to 1 (sum {sum})")]
    BadMixture { sum: f64 },
    #[error("no admissible l-inverse with exponents down to {lowest}")]
    SearchExhausted { lowest: i64 },
    #[error("sequence is equal to the zero sequence at the probed horizon")]
    ZeroSequence,
    #[error("row {row} of the grid is not Cauchy at the probed horizon")]
    RowNotCauchy { row: usize },
    #[error("the rows of the grid do not form a Cauchy sequence at accuracy {ell}")]
    RowsNotCauchy { ell: u32 },
    #[error("invalid horizon: {0}")]
    BadHorizon(String),
    #[error("invalid bit pattern '{0}'")]
    BadPattern(String),
    #[error("every weight rounds to zero at index {n}")]
    EmptySupport { n: usize },
    #[error("sigma must be a positive nonzero state")]
    BadSigma,
    #[error("invalid record: {0}")]
    Record(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
