use thiserror::Error;

/// Every failure an evaluator, table builder or scan can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at {0}")]
    Pole(String),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("within the excluded disk |s-1| <= 1/10 at {0}")]
    NearPole(String),

    #[error("capacity exceeded: {requested} > {limit}")]
    Capacity { requested: u64, limit: u64 },

    #[error("zero count mismatch on [{t_min}, {t_max}]: found {found}, expected {expected}")]
    MissedZero { t_min: f64, t_max: f64, found: usize, expected: i64 },

    #[error("N(t) not integral at t={t}: value {value}")]
    Integrality { t: f64, value: f64 },

    #[error("scan grid too coarse near t={t}: phase jump {jump}")]
    GridTooCoarse { t: f64, jump: f64 },

    #[error("evaluation at an exact zero ordinate {0}; nudge t upward")]
    Convention(f64),

    #[error("combined product vanishes at t={t} (|P|={modulus:e})")]
    ProductZero { t: f64, modulus: f64 },

    #[error("argument tracking failed near {0}")]
    ArgTracking(String),

    #[error("non-finite result: {0}")]
    NonFinite(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
