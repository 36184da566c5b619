//! Prime fields, their extensions, and the linear algebra over them.

mod artin;
mod ext;
pub mod linalg;
mod moore;
pub mod prime;
mod upoly;

pub use artin::artin_schreier_solve;
pub use ext::{make_field, ExtElement, FieldConfig};
pub use moore::{find_normal_element, mat_mul, moore_matrix, MooreMatrix};
pub use prime::{is_prime, next_prime, prime_index, DEFAULT_SIEVE_LIMIT};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} out of range (1..={max})", max = ext::MAX_DEGREE)]
    DegreeOutOfRange(usize),
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: usize },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("prime index target {target} exceeds sieve limit {limit}")]
    SieveBudgetExceeded { target: u64, limit: u64 },
    #[error("Moore matrix is singular (det = {det})")]
    NotInvertible { det: String },
    #[error("x^p - x = c has no solution: trace(c) = {trace}")]
    NoSolution { trace: u64 },
    #[error("cannot parse field element {input:?}: {reason}")]
    Parse { input: String, reason: String },
}
