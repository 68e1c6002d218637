use thiserror::Error;

/// Errors raised by the library. Every variant maps to a stable machine code
/// via [`OrchardError::code`], which the command-line front end reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrchardError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("label {label} out of range 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },

    #[error("labels must be distinct, got {0} twice")]
    RepeatedLabel(usize),

    /// The 1-based labels of a subset that fails the genericity test.
    #[error("configuration is not generic: points {subset:?} are dependent")]
    NonGeneric { subset: Vec<usize> },

    #[error("parity hypothesis violated: {0}")]
    UnsupportedParity(String),

    #[error("random generation exhausted {retries} retries: {what}")]
    RetriesExhausted { what: String, retries: usize },

    #[error("flip cannot be realized: {0}")]
    FlipObstructed(String),

    #[error("invalid wiring diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("invalid function family: {0}")]
    InvalidFamily(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A theorem-level assertion failed. Never expected on valid input.
    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl OrchardError {
    pub fn code(&self) -> &'static str {
        match self {
            OrchardError::DimensionMismatch { .. } => "dimension_mismatch",
            OrchardError::InvalidInput(_) => "invalid_input",
            OrchardError::LabelOutOfRange { .. } => "label_out_of_range",
            OrchardError::RepeatedLabel(_) => "repeated_label",
            OrchardError::NonGeneric { .. } => "non_generic",
            OrchardError::UnsupportedParity(_) => "unsupported_parity",
            OrchardError::RetriesExhausted { .. } => "retries_exhausted",
            OrchardError::FlipObstructed(_) => "flip_obstructed",
            OrchardError::InvalidDiagram(_) => "invalid_diagram",
            OrchardError::InvalidChart(_) => "invalid_chart",
            OrchardError::InvalidFamily(_) => "invalid_family",
            OrchardError::Parse { .. } => "parse",
            OrchardError::Internal(_) => "internal",
            OrchardError::Io(_) => "io",
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        OrchardError::Parse {
            line,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for OrchardError {
    fn from(e: std::io::Error) -> Self {
        OrchardError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, OrchardError>;
