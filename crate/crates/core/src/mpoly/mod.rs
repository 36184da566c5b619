//! Exact sparse multivariate polynomials over Z, F_p and F_{p^n}.

mod gcd;
mod linear;
mod monomial;
mod poly;
mod rational;
pub mod resultant;
mod ring;
pub mod text;
mod varset;

pub use gcd::{coprime_certificate, poly_gcd, CoprimeCertificate};
pub use linear::{substitute_linear, to_extension, to_prime_field};
pub use monomial::{Monomial, MAX_VARS};
pub use poly::{Evaluator, SparsePoly};
pub use rational::RationalExpr;
pub use resultant::{discriminant, resultant, resultant_bareiss, resultant_with};
pub use ring::{Field, IntegerRing, PrimeField, Ring};
pub use varset::VarSet;

use thiserror::Error;

/// Integer-coefficient polynomial, the working type of the derivations.
pub type IntPoly = SparsePoly<IntegerRing>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MpolyError {
    #[error("domain mismatch: {left} vs {right}")]
    DomainMismatch { left: String, right: String },
    #[error("not divisible: obstructing term {term}")]
    NotDivisible { term: String },
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },
}
