//! Verification reports shared by every identity checker.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Knobs shared by all `verify_*` operations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Evaluate independent cases on the rayon pool.
    pub parallel: bool,
    /// Test hook: adds 1 to one coefficient of every right-hand side before comparing,
    /// so a working checker must report failures.
    pub perturb: bool,
}

impl VerifyOptions {
    pub fn parallel() -> Self {
        VerifyOptions { parallel: true, perturb: false }
    }

    pub fn serial() -> Self {
        VerifyOptions::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    /// Human-readable case label, e.g. `n=3` or `(iv) n=5`.
    pub case: String,
    pub n: u32,
    pub pass: bool,
    /// First mismatching term, when `pass` is false.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub diff: Option<String>,
}

impl CaseResult {
    pub fn new(case: impl Into<String>, n: u32, mismatch: Option<String>) -> Self {
        CaseResult { case: case.into(), n, pass: mismatch.is_none(), diff: mismatch }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub identity: String,
    pub pass: bool,
    pub cases: Vec<CaseResult>,
}

impl Report {
    pub fn new(identity: impl Into<String>, cases: Vec<CaseResult>) -> Self {
        let pass = cases.iter().all(|c| c.pass);
        Report { identity: identity.into(), pass, cases }
    }

    pub fn first_failure(&self) -> Option<&CaseResult> {
        self.cases.iter().find(|c| !c.pass)
    }

    pub fn passed_count(&self) -> usize {
        self.cases.iter().filter(|c| c.pass).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} ({}/{})",
            self.identity,
            if self.pass { "PASS" } else { "FAIL" },
            self.passed_count(),
            self.cases.len()
        )?;
        for c in &self.cases {
            match &c.diff {
                None => writeln!(f, "  {} ok", c.case)?,
                Some(d) => writeln!(f, "  {} FAIL: {}", c.case, d)?,
            }
        }
        Ok(())
    }
}

/// Runs `check` for every `n` in `range`, concatenating results in `n` order
/// whether or not the work is parallel.
pub fn run_cases<F>(opts: &VerifyOptions, range: std::ops::RangeInclusive<u32>, check: F) -> Vec<CaseResult>
where
    F: Fn(u32) -> Vec<CaseResult> + Sync + Send,
{
    let per_n: Vec<Vec<CaseResult>> = if opts.parallel {
        range.into_par_iter().map(&check).collect()
    } else {
        range.map(&check).collect()
    };
    per_n.into_iter().flatten().collect()
}
