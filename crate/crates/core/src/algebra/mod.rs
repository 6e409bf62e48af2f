//! Exact arithmetic for F_p, F_p[t], F_p(t) and invertible matrices
//! over F_p(t). Everything here is immutable after construction and
//! exact: no tolerances, no floating point.

mod fp;
mod matrix;
mod poly;
mod ratfunc;

pub use fp::{is_prime_u64, PrimeField, PrimeFieldElem};
pub use matrix::{GroupElement, Mat};
pub use poly::Poly;
pub use ratfunc::RatFunc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch")]
    DimensionMismatch,
}
