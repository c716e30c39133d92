use shirshov_core::CoreError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("malformed {what}: {detail}")]
    Format { what: &'static str, detail: String },
    #[error("golden file {path} differs from the computed output")]
    GoldenMismatch { path: String },
}

impl Error {
    pub(crate) fn format(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Format { what, detail: detail.into() }
    }

    /// Whether the failure comes from bad user input rather than a
    /// detected property violation.
    pub fn is_usage(&self) -> bool {
        !matches!(self, Error::GoldenMismatch { .. })
    }
}
