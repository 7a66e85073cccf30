//! Exact arithmetic over `Q` and `F_p`, and the sparse linear algebra every
//! homological computation bottoms out in.

mod field;
mod sparse;

pub use field::{is_prime, FieldSpec, Scalar, MAX_PRIME};
pub use sparse::{axpy, collect_vec, scale, Echelon, Rref, SparseMatrix, SparseVec};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("{0} is not a supported prime (must be prime and below 2^31)")]
    NotPrime(u64),
    #[error("unrecognised field `{0}` (expected Q or F<p>)")]
    BadField(String),
    #[error("denominator of {value} vanishes in F{p}")]
    DenominatorVanishes { value: String, p: u64 },
    #[error("entry ({row}, {col}) out of range")]
    IndexOutOfRange { row: usize, col: usize },
    #[error("cannot multiply {left:?} by {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("row is not strictly increasing, in range and zero-free")]
    MalformedRow,
}
