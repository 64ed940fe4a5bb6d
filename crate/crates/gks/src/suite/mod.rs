//! Replays of the recorded results against the engine.

pub mod appendix;
pub mod section4;
pub mod section5;
pub mod table1;
pub mod theorems;

use std::collections::BTreeSet;

use gks_core::numcheck::{spot_check, SampleOptions, ZeroClaim};
use serde_json::json;

use crate::golden::GoldenDir;
use crate::report::{Check, SuiteReport};
use crate::{AppError, Result};

pub const ALL: [&str; 5] = ["table1", "appendix", "section4", "theorems", "section5"];

#[derive(Clone, Debug)]
pub struct Numeric {
    pub trials: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for Numeric {
    fn default() -> Self {
        Numeric { trials: 20, tol: 1e-9, seed: 1 }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub golden: GoldenDir,
    /// Also spot-check every exact zero claim in floating point.
    pub numeric: Option<Numeric>,
}

pub fn run(name: &str, opts: &Options) -> Result<SuiteReport> {
    let checks = match name {
        "table1" => table1::run(opts)?,
        "appendix" => appendix::run(opts)?,
        "section4" => section4::run(opts)?,
        "theorems" => theorems::run(opts)?,
        "section5" => section5::run(opts)?,
        _ => return Err(AppError::Usage(format!("unknown suite {name}; expected one of {}", ALL.join(", ")))),
    };
    Ok(SuiteReport::new(name, checks))
}

/// The floating-point companion of an exact zero claim, when requested.
pub(crate) fn numeric_check(
    opts: &Options,
    id: &str,
    claim: &ZeroClaim,
    positive: &[String],
    expect_zero: bool,
) -> Result<Option<Check>> {
    let Some(n) = &opts.numeric else { return Ok(None) };
    let so = SampleOptions { positive: positive.iter().cloned().collect::<BTreeSet<_>>(), max_jet_order: None };
    let r = spot_check(claim, n.trials, n.tol, n.seed, &so)?;
    Ok(Some(
        Check::new(format!("{id}/numeric"), expect_zero, r.pass)
            .data(json!({"trials": r.trials, "evaluated": r.evaluated, "skipped": r.skipped, "max_rel": r.max_rel})),
    ))
}
