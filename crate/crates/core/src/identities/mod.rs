//! Checks of the printed identities against the derived systems.
//!
//! Each check yields a [`CheckResult`]; a [`Report`] collects them in check-id
//! order. Symbolic comparisons are the verdict. Where a display elides
//! middle terms, only its complete factors and printed coefficients are
//! asserted.

mod n3;
mod n4;
mod random;

pub use n3::verify_n3;
pub use n4::verify_n4;
pub use random::{verify_difference_identity, verify_lemma21};

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::mpoly::{text, IntPoly, VarSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub status: Status,
    pub details: String,
    pub ms: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub verdict: Verdict,
    pub seed: u64,
    pub version: String,
    pub cache_hashes: BTreeMap<String, String>,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub(crate) fn new(suite: &str, seed: u64, mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let verdict = if checks.iter().any(|c| c.status == Status::Fail) {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
        Report {
            schema: 1,
            suite: suite.to_string(),
            verdict,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            cache_hashes: BTreeMap::new(),
            checks,
        }
    }

    pub fn with_cache_hashes(mut self, hashes: BTreeMap<String, String>) -> Self {
        self.cache_hashes = hashes;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check_id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

/// Outcome of one check body.
pub(crate) struct Outcome {
    status: Status,
    details: String,
}

impl Outcome {
    pub(crate) fn pass(details: impl Into<String>) -> Self {
        Outcome {
            status: Status::Pass,
            details: details.into(),
        }
    }

    pub(crate) fn warn(details: impl Into<String>) -> Self {
        Outcome {
            status: Status::Warn,
            details: details.into(),
        }
    }

    pub(crate) fn fail(details: impl Into<String>) -> Self {
        Outcome {
            status: Status::Fail,
            details: details.into(),
        }
    }

    pub(crate) fn from_bool(ok: bool, details: impl Into<String>) -> Self {
        if ok {
            Self::pass(details)
        } else {
            Self::fail(details)
        }
    }

    /// Worst of several outcomes, with their details joined.
    pub(crate) fn all(parts: Vec<Outcome>) -> Self {
        let status = parts.iter().map(|o| o.status).max_by_key(|s| *s as u8).unwrap_or(Status::Pass);
        let details = parts.into_iter().map(|o| o.details).collect::<Vec<_>>().join("; ");
        Outcome { status, details }
    }
}

/// Runs a check and times it.
pub(crate) fn run(id: &str, body: impl FnOnce() -> Outcome) -> CheckResult {
    let start = Instant::now();
    let o = body();
    CheckResult {
        check_id: id.to_string(),
        status: o.status,
        details: o.details,
        ms: start.elapsed().as_millis() as u64,
    }
}

/// Parses a display written in this crate's expression syntax. Panics on
/// malformed input: every display is a literal in the source.
pub(crate) fn expr(vars: &VarSet, s: &str) -> IntPoly {
    text::parse_expr(vars, s).unwrap_or_else(|e| panic!("bad display {s:?}: {e}"))
}

/// Compares two polynomials; on mismatch, names the first differing term.
pub(crate) fn compare(label: &str, actual: &IntPoly, expected: &IntPoly) -> Outcome {
    if actual == expected {
        return Outcome::pass(format!("{label}: exact match ({} terms)", actual.len()));
    }
    if actual == &expected.neg() {
        return Outcome::fail(format!("{label}: equals −1 times the printed polynomial"));
    }
    let diff = actual.sub(expected);
    let (m, _) = diff.terms()[0];
    let exps = m.exps(actual.nvars());
    Outcome::fail(format!(
        "{label}: first differing monomial {exps:?}: computed {}, printed {}",
        actual.coeff(&m),
        expected.coeff(&m)
    ))
}

/// Checks that each printed term (a monomial times a coefficient) occurs in
/// `f` with exactly that coefficient.
pub(crate) fn printed_terms(label: &str, f: &IntPoly, terms: &[&str]) -> Outcome {
    let mut bad = Vec::new();
    let mut negated = 0;
    for t in terms {
        let e = expr(f.vars(), t);
        assert!(e.is_monomial(), "printed term {t} must be a single term");
        let (m, c) = &e.terms()[0];
        let actual = f.coeff(m);
        if &actual != c {
            if actual == -c {
                negated += 1;
            }
            bad.push(format!("{t}: computed coefficient {actual}"));
        }
    }
    if bad.is_empty() {
        Outcome::pass(format!("{label}: {} printed terms present", terms.len()))
    } else if negated == terms.len() {
        Outcome::fail(format!("{label}: every printed term appears with the opposite sign"))
    } else {
        Outcome::fail(format!("{label}: {}", bad.join(", ")))
    }
}

/// Largest k ≤ limit with g^k | f.
pub(crate) fn multiplicity(f: &IntPoly, g: &IntPoly, limit: u32) -> u32 {
    crate::mpoly::resultant::multiplicity(g, f, limit)
}
