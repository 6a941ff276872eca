use std::path::PathBuf;

/// Errors produced by loading, validation, scoring, and analysis.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Two inputs that must line up (weights vs. matrix, profile vs.
    /// ability order, paired series) have incompatible shapes.
    #[error("alignment error: {0}")]
    Alignment(String),

    /// A domain value violates an invariant (non-finite, negative,
    /// out of scale bounds, duplicate identifier).
    #[error("validation error: {0}")]
    Validation(String),

    /// A file could not be parsed; coordinates are 1-based and refer
    /// to the data as laid out in the file.
    #[error("parse error in {}{}: {message}", .file.display(), position(.row, .column))]
    Parse {
        file: PathBuf,
        row: Option<u64>,
        column: Option<String>,
        message: String,
    },

    /// Every combined ability weight of the occupation is zero.
    #[error("degenerate profile: occupation {soc_code} has no usable ability weights")]
    DegenerateProfile { soc_code: String },

    /// Not enough rows to carry out the requested computation.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// No (group, occupation) pair joins to the score table.
    #[error("empty join: no grouping row matches a scored occupation")]
    EmptyJoin,

    /// Fewer than two occupations are common to the two score tables.
    #[error("insufficient overlap: {common} occupation(s) common to both tables, need at least 2")]
    InsufficientOverlap { common: usize },

    /// Pearson correlation is undefined for a constant series.
    #[error("undefined correlation: {0}")]
    UndefinedCorrelation(String),

    /// A configuration value is missing or inconsistent.
    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for errors that mean "the inputs were readable but too
    /// thin to answer the question" rather than malformed.
    pub fn is_insufficient_data(&self) -> bool {
        matches!(
            self,
            Error::InsufficientData(_)
                | Error::EmptyJoin
                | Error::InsufficientOverlap { .. }
                | Error::UndefinedCorrelation(_)
        )
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

fn position(row: &Option<u64>, column: &Option<String>) -> String {
    match (row, column) {
        (Some(r), Some(c)) => format!(" (row {r}, column {c})"),
        (Some(r), None) => format!(" (row {r})"),
        (None, Some(c)) => format!(" (column {c})"),
        (None, None) => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
