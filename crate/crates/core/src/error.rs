use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("cannot extend precision from x^{have} to x^{want}")]
    CannotExtend { have: usize, want: usize },
    #[error("insufficient truncation: need order >= {need}, have {have}")]
    Precision { need: usize, have: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no k-useful pair (m, n) with l(m, n) = {l}, n >= {k} and odd C(m, n)")]
    PairNotFound { l: i64, k: i64 },
    #[error("degree {l} is below the commutator guarantee c_{k} = {c}")]
    BelowGuarantee { k: usize, l: usize, c: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
