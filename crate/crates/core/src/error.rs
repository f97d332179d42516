use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the simulation, optimization and I/O layers.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or configuration value is outside its admissible domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An index, timestamp or date falls outside the supported range.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// Malformed weather or configuration data. `row` is 1-based and counts
    /// the header line, so it matches what an editor shows.
    #[error("parse error at row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    /// The affine shading fit could not be computed.
    #[error("shading fit failed: {0}")]
    Fit(String),

    /// A horizon problem could not be assembled from its inputs.
    #[error("problem build failed: {0}")]
    Build(String),

    #[error("solver failure: {0}")]
    Solver(String),

    /// A land equivalent ratio has a zero or non-finite baseline.
    #[error("undefined land equivalent ratio: {0}")]
    UndefinedLer(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Whether the failure is numerical (as opposed to bad input data).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Fit(_) | Error::Build(_) | Error::Solver(_) | Error::UndefinedLer(_)
        )
    }
}
