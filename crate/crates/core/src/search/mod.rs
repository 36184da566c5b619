//! Finite-field experiments on f_b(x) = x + 1/(x^p − x + b): permutation
//! tests, collision witnesses, point counts and the Lang–Weil thresholds.

mod count;
mod perm;
mod threshold;
mod variety;

pub use count::{
    count_common_points, count_g1_n3, count_intersection_n3, count_on_conjugates, count_points, moore_transform, specialize_params,
    CountRecord,
};
pub use perm::{
    brute_collision_set, classify_all_b, find_collision_brute, is_permutation, Classification, ClassRow,
    PermutationCheck,
};
pub use threshold::{lang_weil_threshold, Threshold};
pub use variety::{forward_check_n3, variety_witness, Derived, ForwardCheck, VarietyScanner};

use serde::Serialize;
use thiserror::Error;

use crate::derivation::DerivationError;
use crate::fields::{ExtElement, FieldConfig, FieldError};

/// Default cap on the number of points a single scan may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("trace(b) = 0")]
    ZeroTrace,
    #[error("scan of {size} points exceeds the budget of {budget}")]
    BudgetExceeded { size: u128, budget: u64 },
    #[error("f_b is a permutation; there is no collision")]
    NotFound,
    #[error("no qualifying y at p = {p}")]
    NoVarietyPoint { p: u64 },
    #[error("reconstruction failed: {0}")]
    ReconstructionFailure(String),
    #[error("coefficient {0} lies outside F_p")]
    CoefficientLeak(String),
    #[error("variety path not applicable: {0}")]
    NotApplicable(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
}

/// A field F_{p^n} and b with trace(b) ≠ 0.
#[derive(Clone)]
pub struct ProblemInstance {
    pub cfg: FieldConfig,
    pub b: ExtElement,
    /// 2·trace(b) mod p, the required trace of Δ.
    pub t: u64,
}

impl ProblemInstance {
    pub fn new(cfg: FieldConfig, b: ExtElement) -> Result<Self, SearchError> {
        let tr = cfg.trace(&b);
        if tr == 0 {
            return Err(SearchError::ZeroTrace);
        }
        let t = 2 * tr % cfg.p();
        Ok(ProblemInstance { cfg, b, t })
    }

    pub fn p(&self) -> u64 {
        self.cfg.p()
    }

    pub fn n(&self) -> usize {
        self.cfg.n()
    }

    /// Z(x) = x^p − x + b, never zero since trace(b) ≠ 0.
    pub fn z_of(&self, x: &ExtElement) -> ExtElement {
        let cfg = &self.cfg;
        cfg.add(&cfg.sub(&cfg.frobenius(x), x), &self.b)
    }

    pub fn f_b(&self, x: &ExtElement) -> ExtElement {
        let inv = self.cfg.inv(&self.z_of(x)).expect("Z(x) != 0 when trace(b) != 0");
        self.cfg.add(x, &inv)
    }

    /// y^{2p} + y² − 2y^{1+p} + 4y^{p−1} − 4, the required value of Δ².
    pub fn delta_square(&self, y: &ExtElement) -> ExtElement {
        let cfg = &self.cfg;
        let a = cfg.sub(&cfg.frobenius(y), y);
        let c = cfg.sub(&cfg.one(), &cfg.pow(y, (cfg.p() - 1) as u128));
        cfg.sub(&cfg.square(&a), &cfg.scale(&c, 4))
    }

    pub(crate) fn check_budget(&self, size: u128, budget: u64) -> Result<(), SearchError> {
        if size > budget as u128 {
            Err(SearchError::BudgetExceeded { size, budget })
        } else {
            Ok(())
        }
    }

    pub(crate) fn field_size(&self) -> u128 {
        (self.p() as u128).pow(self.n() as u32)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Variety,
}

/// A collision f_b(x + y) = f_b(x) with y ≠ 0, with the intermediate
/// quantities z = x^p − x + b and Δ = 2z + y^p − y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub x: ExtElement,
    pub y: ExtElement,
    pub delta: ExtElement,
    pub z: ExtElement,
    pub method: Method,
}

impl Witness {
    /// Names of the invariants this witness violates.
    pub fn violations(&self, inst: &ProblemInstance) -> Vec<&'static str> {
        let cfg = &inst.cfg;
        let mut bad = Vec::new();
        if self.y.is_zero() {
            bad.push("y != 0");
        }
        if inst.f_b(&cfg.add(&self.x, &self.y)) != inst.f_b(&self.x) {
            bad.push("f_b(x+y) = f_b(x)");
        }
        if self.z != inst.z_of(&self.x) {
            bad.push("z = x^p - x + b");
        }
        let a = cfg.sub(&cfg.frobenius(&self.y), &self.y);
        let c = cfg.sub(&cfg.one(), &cfg.pow(&self.y, (cfg.p() - 1) as u128));
        let quad = cfg.add(&cfg.add(&cfg.square(&self.z), &cfg.mul(&a, &self.z)), &c);
        if !quad.is_zero() {
            bad.push("z^2 + (y^p - y)z + 1 - y^(p-1) = 0");
        }
        if cfg.square(&self.delta) != inst.delta_square(&self.y) {
            bad.push("delta^2 = y^2p + y^2 - 2y^(1+p) + 4y^(p-1) - 4");
        }
        if cfg.trace(&self.delta) != inst.t {
            bad.push("trace(delta) = 2 trace(b)");
        }
        bad
    }

    pub fn is_valid(&self, inst: &ProblemInstance) -> bool {
        self.violations(inst).is_empty()
    }

    pub fn record(&self, inst: &ProblemInstance) -> WitnessRecord {
        WitnessRecord {
            method: self.method,
            p: inst.p(),
            n: inst.n(),
            modulus: inst.cfg.modulus().to_vec(),
            b: inst.b.coeffs().to_vec(),
            x: self.x.coeffs().to_vec(),
            y: self.y.coeffs().to_vec(),
            delta: self.delta.coeffs().to_vec(),
            z: self.z.coeffs().to_vec(),
            valid: self.is_valid(inst),
        }
    }
}

/// JSON form of a witness: elements as coordinate vectors in the
/// polynomial basis of the given modulus (constant coefficient first).
#[derive(Clone, Debug, Serialize)]
pub struct WitnessRecord {
    pub method: Method,
    pub p: u64,
    pub n: usize,
    pub modulus: Vec<u64>,
    pub b: Vec<u64>,
    pub x: Vec<u64>,
    pub y: Vec<u64>,
    pub delta: Vec<u64>,
    pub z: Vec<u64>,
    pub valid: bool,
}
