use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid interval: low ({low}) must be strictly less than high ({high})")]
    InvalidInterval { low: f64, high: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("length mismatch: {what} ({left} vs {right})")]
    LengthMismatch {
        what: &'static str,
        left: usize,
        right: usize,
    },

    #[error("empty partition: {train} train rows, {test} test rows")]
    EmptyPartition { train: usize, test: usize },

    #[error("underdetermined fit: {rows} rows for {params} parameters ({hint})")]
    Underdetermined {
        rows: usize,
        params: usize,
        hint: &'static str,
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("unstable regime: |state| = {value:e} exceeded the overflow guard at step {step}")]
    Unstable { step: usize, value: f64 },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
