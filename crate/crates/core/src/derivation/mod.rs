//! The elimination pipelines for n = 3 and n = 4.
//!
//! Both start from Δ_1 + … + Δ_n = t, where Δ_i² = D_i(Y) is a rational
//! function of Y_i, Y_{i+1}. Squaring away Δ_2, …, Δ_n leaves a relation
//! linear in Δ_1 over Z[Δ_1², …, Δ_n²], which expresses Δ_1 as a quotient of
//! polynomials in X_i = Δ_i². Substituting X_i = D_i and clearing
//! denominators gives the polynomials whose common zeros parametrize the
//! collisions of f_b.

mod cache;
mod n3;
mod n4;

pub use cache::{load_or_derive_n3, load_or_derive_n4, Cache, CacheFile, CacheStatus, Manifest, CACHE_ENV};
pub use n3::{derive_n3, specialize_n3, DerivedSystem3, Specialized3};
pub use n4::{derive_n4, DerivedSystem4};
pub(crate) use n4::{clear_denominators, trace_numerator};

use serde::Serialize;
use thiserror::Error;

use crate::mpoly::{IntPoly, MpolyError, RationalExpr, VarSet};

#[derive(Debug, Error)]
pub enum DerivationError {
    #[error("derivation mismatch at {step}: {detail}")]
    Mismatch { step: String, detail: String },
    #[error("the trace parameter t must be nonzero")]
    ZeroTrace,
    #[error("cache file {file} is corrupt: {reason}")]
    CacheCorrupt { file: String, reason: String },
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Poly(#[from] MpolyError),
}

pub(crate) fn mismatch(step: &str, detail: impl Into<String>) -> DerivationError {
    DerivationError::Mismatch {
        step: step.to_string(),
        detail: detail.into(),
    }
}

/// One step of a derivation, for the record kept with the outputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct LogEntry {
    pub step: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct DerivationLog(pub Vec<LogEntry>);

impl DerivationLog {
    pub(crate) fn push(&mut self, step: &str, detail: impl Into<String>) {
        self.0.push(LogEntry {
            step: step.to_string(),
            detail: detail.into(),
        });
    }

    pub fn entries(&self) -> &[LogEntry] {
        &self.0
    }
}

/// Numerator N_i of D_i = Y_i² + Y_{i+1}² − 2Y_iY_{i+1} + 4Y_{i+1}/Y_i − 4
/// = N_i / Y_i, where i is 0-based within the block and wraps around.
pub fn delta_square_numerator(vars: &VarSet, i: usize) -> IntPoly {
    let b = vars.block();
    let n = b.len();
    let y = |k: usize| IntPoly::var(crate::mpoly::IntegerRing, vars.clone(), b.start + k % n);
    let (a, c) = (y(i), y(i + 1));
    let four = IntPoly::int_const(vars, 4);
    a.pow(3)
        .add(&a.mul(&c.pow(2)))
        .sub(&a.pow(2).mul(&c).scale(&2.into()))
        .sub(&four.mul(&a))
        .add(&four.mul(&c))
}

/// D_i as a quotient; its denominator is exactly Y_i.
pub fn delta_square(vars: &VarSet, i: usize) -> RationalExpr<crate::mpoly::IntegerRing> {
    let b = vars.block();
    let yi = IntPoly::var(crate::mpoly::IntegerRing, vars.clone(), b.start + i % b.len());
    RationalExpr::new(delta_square_numerator(vars, i), yi).expect("Y_i is nonzero")
}

/// Elements a + b·d of R[d] / (d² − r).
#[derive(Clone, Debug)]
struct QuadExt {
    a: IntPoly,
    b: IntPoly,
}

impl QuadExt {
    fn from_parts(a: IntPoly, b: IntPoly) -> Self {
        QuadExt { a, b }
    }

    fn add(&self, o: &Self) -> Self {
        QuadExt::from_parts(self.a.add(&o.a), self.b.add(&o.b))
    }

    fn add_base(&self, c: &IntPoly) -> Self {
        QuadExt::from_parts(self.a.add(c), self.b.clone())
    }

    fn scale_base(&self, c: &IntPoly) -> Self {
        QuadExt::from_parts(self.a.mul(c), self.b.mul(c))
    }

    fn mul(&self, o: &Self, r: &IntPoly) -> Self {
        QuadExt::from_parts(
            self.a.mul(&o.a).add(&self.b.mul(&o.b).mul(r)),
            self.a.mul(&o.b).add(&self.b.mul(&o.a)),
        )
    }

    fn square(&self, r: &IntPoly) -> Self {
        self.mul(self, r)
    }
}
