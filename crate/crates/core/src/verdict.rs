//! Pass/fail outcomes of law checks.

use alloc::string::String;
use core::fmt;

/// Outcome of checking one law on a finite set of instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawVerdict {
    pub law: String,
    /// Number of instances compared.
    pub checks: usize,
    /// First failing instance, rendered so it can be reproduced in isolation.
    pub witness: Option<String>,
}

impl LawVerdict {
    pub fn new(law: impl Into<String>) -> Self {
        LawVerdict { law: law.into(), checks: 0, witness: None }
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    /// Records one comparison; keeps the first witness only.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn fail(law: impl Into<String>, witness: String) -> Self {
        LawVerdict { law: law.into(), checks: 1, witness: Some(witness) }
    }
}

impl fmt::Display for LawVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{}: pass ({} checks)", self.law, self.checks),
            Some(w) => write!(f, "{}: FAIL after {} checks, witness {}", self.law, self.checks, w),
        }
    }
}
