//! Pass/fail bookkeeping shared by the verification suites.

use alloc::string::String;
use alloc::vec::Vec;

/// One checked instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub identity: String,
    pub tuple: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

/// Outcome of a suite: how many instances were checked and every failure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checked: usize,
    pub failures: Vec<Instance>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suite: suite.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Count one instance; on failure, build its description with `describe`
    /// (so passing instances cost no formatting).
    pub fn record(&mut self, pass: bool, describe: impl FnOnce() -> Instance) {
        self.checked += 1;
        if !pass {
            let mut inst = describe();
            inst.pass = false;
            self.failures.push(inst);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}

pub(crate) fn instance(identity: &str, tuple: String, lhs: String, rhs: String) -> Instance {
    Instance { identity: identity.into(), tuple, lhs, rhs, pass: false }
}
