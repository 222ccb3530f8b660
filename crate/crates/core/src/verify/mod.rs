//! Seeded suites that check the library's closed forms against brute-force
//! computation. Each suite returns a [`SuiteReport`]; a failing case is
//! recorded with a description, not raised.

mod calculus;
mod groups;
mod symbolic;

pub use calculus::{aut_suite, k0_suite, random_set_expr};
pub use groups::{ed_suite, gl_suite, lift_suite, perm_suite, semiab_suite, wreath_suite};
pub use symbolic::{monotone_suite, symbolic_suite, truncation_suite};

use crate::groups::DEFAULT_CAP;
use crate::report::SuiteReport;

pub const SUITES: &[&str] =
    &["semiab", "wreath", "perm", "gl", "ed", "lift", "truncation", "k0", "aut", "symbolic", "monotone"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    pub cap: usize,
    /// Overrides the number of random cases where a suite draws them.
    pub cases: Option<usize>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 7, cap: DEFAULT_CAP, cases: None }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport, UnknownSuite> {
    Ok(match name {
        "semiab" => semiab_suite(opts.seed, opts.cases.unwrap_or(30), opts.cap),
        "wreath" => wreath_suite(opts.cap),
        "perm" => perm_suite(opts.cap),
        "gl" => gl_suite(opts.cap),
        "ed" => ed_suite(opts.cap),
        "lift" => lift_suite(),
        "truncation" => truncation_suite(opts.cap),
        "k0" => k0_suite(opts.seed, opts.cases.unwrap_or(50)),
        "aut" => aut_suite(opts.seed, opts.cases.unwrap_or(30)),
        "symbolic" => symbolic_suite(),
        "monotone" => monotone_suite(),
        other => return Err(UnknownSuite(other.to_string())),
    })
}
