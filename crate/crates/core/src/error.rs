use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("evaluation at pole: variable {0} substituted by zero")]
    Pole(&'static str),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{what} index {index} out of range (allowed {lo}..={hi})")]
    IndexOutOfRange {
        what: &'static str,
        index: i64,
        lo: i64,
        hi: i64,
    },

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("invalid set partition: {0}")]
    InvalidPartition(String),

    #[error("invalid signed permutation: {0}")]
    InvalidPermutation(String),

    #[error("unsupported size n = {n} for {what} (max {max})")]
    Unsupported {
        what: &'static str,
        n: usize,
        max: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(what: &'static str, index: i64, lo: i64, hi: i64) -> Error {
    Error::IndexOutOfRange { what, index, lo, hi }
}
