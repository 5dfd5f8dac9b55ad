use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("basis index out of range in `{0}`")]
    IndexOutOfRange(String),
    #[error("malformed exponent in `{0}`")]
    MalformedExponent(String),
    #[error("vector `{token}` has {found} entries, surface rank is {expected}")]
    VectorLengthMismatch {
        token: String,
        expected: usize,
        found: usize,
    },
    #[error("invalid value `{value}` for {flag}")]
    BadValue { flag: &'static str, value: String },
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::UnknownToken(_) => "unknown_token",
            ParseError::IndexOutOfRange(_) => "index_out_of_range",
            ParseError::MalformedExponent(_) => "malformed_exponent",
            ParseError::VectorLengthMismatch { .. } => "vector_length_mismatch",
            ParseError::BadValue { .. } => "bad_value",
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Precondition(#[from] fibrekit::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) | CliError::Usage(_) | CliError::Io { .. } => 3,
            CliError::Verification(_) => 4,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse(e) => e.code(),
            CliError::Precondition(_) => "precondition",
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Verification(_) => "verification_failed",
        }
    }

    /// Machine-readable form written to stderr.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            code: &'a str,
            exit_code: i32,
            message: String,
        }
        #[derive(Serialize)]
        struct Envelope<'a> {
            error: Body<'a>,
        }
        serde_json::to_string(&Envelope {
            error: Body {
                code: self.code(),
                exit_code: self.exit_code(),
                message: self.to_string(),
            },
        })
        .expect("error body serializes")
    }
}
