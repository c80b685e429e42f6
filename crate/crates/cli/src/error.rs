use zetax_core::Error;

pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;
pub const EXIT_CACHE: u8 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    CacheMismatch(String),
    #[error(transparent)]
    Core(#[from] Error),
}

fn core_kind(e: &Error) -> &'static str {
    match e {
        Error::Pole(_) => "pole",
        Error::Domain(_) => "domain",
        Error::NearPole(_) => "near_pole",
        Error::Capacity { .. } => "capacity",
        Error::MissedZero { .. } => "missed_zero",
        Error::Integrality { .. } => "integrality",
        Error::GridTooCoarse { .. } => "grid_too_coarse",
        Error::Convention(_) => "convention",
        Error::ProductZero { .. } => "product_zero",
        Error::ArgTracking(_) => "arg_tracking",
        Error::NonFinite(_) => "non_finite",
        Error::Parse(_) => "parse",
        Error::Io(_) => "io",
    }
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::CacheMismatch(_) => "cache_mismatch",
            CliError::Core(e) => core_kind(e),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::CacheMismatch(_) => EXIT_CACHE,
            CliError::Core(Error::Domain(_) | Error::Parse(_) | Error::Capacity { .. } | Error::Io(_)) => EXIT_CONFIG,
            CliError::Core(_) => EXIT_NUMERIC,
        }
    }

    /// One-line JSON for stderr.
    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self.kind(), "exit": self.exit_code(), "message": self.to_string() }).to_string()
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(Error::from(e))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
