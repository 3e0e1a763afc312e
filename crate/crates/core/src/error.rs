use thiserror::Error;

/// Largest supported number of qubits.
pub const MAX_QUBITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension error: expected {expected} entries, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported size: n = {0} (supported range is 1..={MAX_QUBITS})")]
    UnsupportedSize(usize),

    #[error("catalog error: unknown state `{0}`")]
    Catalog(String),

    #[error("parameter error: `{name}` takes {expected} parameters, got {found}")]
    Parameter {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("slot mismatch: pattern has {pattern} slots, state has {state} qubits")]
    SlotMismatch { pattern: usize, state: usize },

    #[error("invalid pattern: {0}")]
    Pattern(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_size(n: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedSize(n))
    }
}
