use thiserror::Error;

/// Error type shared by the library and the CLI.
///
/// Every variant maps to a stable machine-readable category string so the
/// CLI can report `error[<category>]: <message>` on a single line.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed numeric or flag input.
    #[error("{0}")]
    Parse(String),
    /// Value not representable in Q16.16.
    #[error("{0}")]
    Range(String),
    /// Parameter outside the map's domain (x in [0,1], r in (0,4]).
    #[error("{0}")]
    Domain(String),
    /// Invalid simulator configuration.
    #[error("{0}")]
    Config(String),
    /// Not enough orbit points for the requested analysis.
    #[error("{0}")]
    InsufficientData(String),
    /// Orbits are not comparable (mismatched parameters or lengths).
    #[error("{0}")]
    Comparison(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn category(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::Range(_) => "range",
            Error::Domain(_) => "domain",
            Error::Config(_) => "config",
            Error::InsufficientData(_) => "insufficient-data",
            Error::Comparison(_) => "comparison",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
