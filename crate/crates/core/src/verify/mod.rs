//! Exhaustive and randomised check suites. Each suite returns one line per
//! property with the number of cases run, the number of failures and the
//! first failing case. Results do not depend on the number of threads.

mod acyclicity;
mod brace;
mod cochain;
pub mod enumerate;
mod normal_form;
mod operad;
mod prism;
mod products;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::{invalid, Result};

pub use brace::{check_angle_structure, AngleAxiomRange};

pub const SUITES: &[&str] = &["operad-axioms", "cochain", "brace", "prism", "new6", "normalform-oracle", "acyclicity"];

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Number of random cases; `None` runs the default (exhaustive where the
    /// suite has an exhaustive range).
    pub cases: Option<usize>,
    pub n: Option<usize>,
    pub k: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("serialisable");
        v["passed"] = Value::Bool(self.passed());
        v
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let checks = match name {
        "operad-axioms" => operad::run(opts)?,
        "cochain" => cochain::run(opts)?,
        "brace" => brace::run(opts)?,
        "prism" => prism::run(opts)?,
        "new6" => cochain::run_new6(opts)?,
        "normalform-oracle" => normal_form::run(opts)?,
        "acyclicity" => acyclicity::run(opts)?,
        _ => return invalid(format!("unknown suite {name:?}; known: {}", SUITES.join(", "))),
    };
    Ok(SuiteReport { suite: name.to_string(), checks })
}

/// A generator seeded by the suite seed, a per-check stream and the case index.
pub(crate) fn case_rng(seed: u64, stream: &str, index: usize) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in stream.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ h);
    rng.set_stream(index as u64);
    rng
}

/// Runs `check` on every case in parallel; failures are reported in case order.
pub(crate) fn run_cases<C, F>(name: &str, cases: &[C], check: F) -> CheckResult
where
    C: Sync,
    F: Fn(usize, &C) -> std::result::Result<(), String> + Sync,
{
    let failures: Vec<(usize, String)> =
        cases.par_iter().enumerate().filter_map(|(i, c)| check(i, c).err().map(|e| (i, e))).collect();
    CheckResult {
        name: name.to_string(),
        cases: cases.len(),
        failures: failures.len(),
        first_failure: failures.into_iter().min_by_key(|(i, _)| *i).map(|(i, e)| format!("case {i}: {}", truncate(&e))),
    }
}

fn truncate(s: &str) -> String {
    const MAX: usize = 2000;
    match s.char_indices().nth(MAX) {
        Some((cut, _)) => format!("{}…", &s[..cut]),
        None => s.to_string(),
    }
}

/// Runs `count` seeded random cases.
pub(crate) fn run_random<F>(name: &str, seed: u64, count: usize, check: F) -> CheckResult
where
    F: Fn(&mut ChaCha8Rng) -> std::result::Result<(), String> + Sync,
{
    let idx: Vec<usize> = (0..count).collect();
    run_cases(name, &idx, |i, _| check(&mut case_rng(seed, name, i)))
}

/// Turns an equality test into a case result.
pub(crate) fn expect_eq<T: PartialEq + std::fmt::Debug>(
    what: &str,
    got: T,
    want: T,
) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

pub(crate) fn ok<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}
