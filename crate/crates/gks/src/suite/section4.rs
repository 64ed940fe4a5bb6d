//! The reduced system after the solved ansatz for the coefficient-free equations.

use gks_core::parse::ParseContext;
use gks_core::pde::Family;
use gks_core::symmetry::{determining_system, substitute_ansatz, Generator};
use serde_json::json;

use crate::context::with_functions;
use crate::golden::Section4;
use crate::parse;
use crate::report::Check;
use crate::Result;

use super::Options;

pub fn ansatz(s: &Section4, ctx: &ParseContext) -> Result<Generator> {
    let get = |k: &str| -> Result<gks_core::Expr> {
        let src = s.ansatz.get(k).ok_or_else(|| crate::AppError::Usage(format!("ansatz lacks {k}")))?;
        parse(src, ctx)
    };
    Ok(Generator { xi: [get("xi1")?, get("xi2")?, get("xi3")?], eta: get("eta")? })
}

pub fn run(opts: &Options) -> Result<Vec<Check>> {
    let s: Section4 = opts.golden.load("section4.json")?;
    let ctx = with_functions(ParseContext::default(), &s.functions)?;
    let gen = ansatz(&s, &ctx)?;
    let ds = determining_system(&Family::generic())?;
    let rest = substitute_ansatz(&ds, &gen)?;
    let mut out = Vec::new();
    let mut listed = Vec::new();
    for (i, src) in s.remaining.iter().enumerate() {
        let e = parse(src, &ctx)?.monic();
        out.push(Check::holds(format!("section4/remaining{:02}", i + 1), rest.contains(&e)).data(json!({"equation": src})));
        listed.push(e);
    }
    let extra: Vec<String> = rest.exprs().filter(|e| !listed.contains(e)).map(|e| e.to_string()).collect();
    out.push(
        Check::holds("section4/exact-set", extra.is_empty() && listed.len() == rest.len())
            .note(format!("{} computed, {} listed", rest.len(), listed.len()))
            .data(json!({"unlisted": extra})),
    );
    Ok(out)
}
