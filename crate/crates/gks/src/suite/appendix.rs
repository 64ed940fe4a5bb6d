//! The determining system of the general equation against the printed list.

use gks_core::parse::ParseContext;
use gks_core::pde::Family;
use gks_core::symmetry::determining_system;
use gks_core::symmetry::span::Basis;
use serde_json::json;

use crate::golden::AppendixA;
use crate::parse;
use crate::report::Check;
use crate::Result;

use super::Options;

pub fn run(opts: &Options) -> Result<Vec<Check>> {
    let a: AppendixA = opts.golden.load("appendix_a.json")?;
    let ds = determining_system(&Family::generic())?;
    let ctx = ParseContext::default();
    let mut out = Vec::new();

    let mut verbatim = 0usize;
    let mut missing = Vec::new();
    let mut listed = Vec::new();
    for e in &a.equations {
        let printed = parse(&e.printed, &ctx)?;
        let found = ds.contains(&printed);
        let typo = a.expected.printed_typos.contains(&e.index);
        if found {
            verbatim += 1;
        } else if !typo {
            missing.push(e.index);
        }
        if typo {
            out.push(
                Check::new(format!("appendix/eq{:03}/printed", e.index), false, found)
                    .note(e.justification.clone().unwrap_or_default()),
            );
        }
        let fixed = match &e.corrected {
            Some(c) => {
                let c = parse(c, &ctx)?;
                out.push(Check::holds(format!("appendix/eq{:03}/corrected", e.index), ds.contains(&c)).data(json!({
                    "printed": e.printed,
                    "corrected": e.corrected,
                    "difference": (&printed.monic() - &c.monic()).to_string(),
                })));
                c
            }
            None => printed,
        };
        listed.push(fixed);
    }
    let frac = verbatim as f64 / a.equations.len().max(1) as f64;
    out.push(
        Check::holds("appendix/verbatim-fraction", frac >= a.expected.verbatim_min_fraction)
            .note(format!("{verbatim}/{} printed equations found verbatim", a.equations.len()))
            .data(json!({"fraction": frac, "min": a.expected.verbatim_min_fraction, "unexpected_misses": missing})),
    );
    out.push(
        Check::holds("appendix/count", ds.len() == a.count && a.equations.len() == a.count)
            .note(format!("computed {}, printed {}", ds.len(), a.equations.len())),
    );

    let computed = Basis::from_exprs(ds.exprs());
    let printed = Basis::from_exprs(&listed);
    let outside: Vec<usize> =
        listed.iter().zip(&a.equations).filter(|(e, _)| !computed.contains(e)).map(|(_, x)| x.index).collect();
    let uncovered = ds.exprs().filter(|e| !printed.contains(e)).count();
    out.push(
        Check::holds("appendix/span", outside.is_empty() && uncovered == 0)
            .note(format!("rank {} vs {}", computed.rank(), printed.rank()))
            .data(json!({"printed_outside_span": outside, "computed_outside_span": uncovered})),
    );
    Ok(out)
}
