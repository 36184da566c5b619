use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use super::{MpolyError, MAX_VARS};

/// Ordered variable names. The first `params` variables are parameters
/// (like T); the rest form the block that cyclic shifts act on and that
/// homogeneous degrees are counted in.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Arc<[String]>,
    params: usize,
}

impl VarSet {
    /// Variables with no parameters.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Self::with_params(names, 0)
    }

    pub fn with_params<S: AsRef<str>>(names: &[S], params: usize) -> Self {
        assert!(names.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        assert!(params <= names.len());
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            assert!(!names[..i].contains(n), "duplicate variable {n}");
        }
        VarSet {
            names: names.into(),
            params,
        }
    }

    /// `prefix1 .. prefixN`, e.g. Y1 Y2 Y3.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        Self::new(&names)
    }

    /// `param` followed by `prefix1 .. prefixN`.
    pub fn param_and_indexed(param: &str, prefix: &str, n: usize) -> Self {
        let mut names = vec![param.to_string()];
        names.extend((1..=n).map(|i| format!("{prefix}{i}")));
        Self::with_params(&names, 1)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn params(&self) -> usize {
        self.params
    }

    /// Index range of the non-parameter block.
    pub fn block(&self) -> Range<usize> {
        self.params..self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, MpolyError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| MpolyError::UnknownVariable(name.to_string()))
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(" "))?;
        if self.params > 0 {
            write!(f, " params={}", self.params)?;
        }
        Ok(())
    }
}
