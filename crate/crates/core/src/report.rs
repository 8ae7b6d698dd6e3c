use std::fmt::Display;

use serde::Serialize;

/// Number of failures kept verbatim in a report; further ones are only counted.
const KEPT_FAILURES: usize = 50;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Failure {
    pub case: String,
    pub expected: String,
    pub got: String,
}

/// Outcome of one verification suite.
#[derive(Clone, Debug, Serialize, Default)]
pub struct Report {
    pub suite: String,
    pub cases: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// Records one comparison; `case` is only rendered on failure.
    pub fn check<T, F>(&mut self, case: F, expected: T, got: T)
    where
        T: PartialEq + Display,
        F: FnOnce() -> String,
    {
        self.cases += 1;
        if expected != got {
            self.fail(case(), expected.to_string(), got.to_string());
        }
    }

    pub fn check_true<F: FnOnce() -> String>(&mut self, case: F, ok: bool) {
        self.cases += 1;
        if !ok {
            self.fail(case(), "true".into(), "false".into());
        }
    }

    pub fn fail(&mut self, case: String, expected: String, got: String) {
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(Failure {
                case,
                expected,
                got,
            });
        }
    }

    /// Folds another report into this one.
    pub fn absorb(&mut self, other: Report) {
        self.cases += other.cases;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < KEPT_FAILURES {
                let case = format!("{}: {}", other.suite, f.case);
                self.failures.push(Failure { case, ..f });
            }
        }
    }
}
