//! Every listed generator of every row of the classification table.

use gks_core::symmetry::{replay_case, GeneratorCase, Repair};
use gks_core::Atom;
use rayon::prelude::*;
use serde_json::json;

use crate::context::{constraints, family, generator, with_functions};
use crate::golden::{GeneratorEntry, Table1, Table1Row};
use crate::parse;
use crate::report::Check;
use crate::Result;

use super::{numeric_check, Options};

const REPAIR_PARAM: &str = "k";

fn case(entry: &GeneratorEntry, ctx: &gks_core::parse::ParseContext) -> Result<GeneratorCase> {
    let ctx = with_functions(ctx.clone(), &entry.functions)?;
    let gen = generator(&entry.generator, &ctx)?;
    let cons = constraints(entry.constraint.as_slice(), &ctx)?;
    let repair = match &entry.typo {
        None => None,
        Some(t) => {
            let rgen = match &t.template {
                Some(s) => generator(s, &ctx)?,
                None => gen.clone(),
            };
            let rcons = match (&t.template_constraint, &entry.constraint) {
                (Some(eq), Some(c)) => {
                    let mut c = c.clone();
                    c.equation = eq.clone();
                    constraints(std::slice::from_ref(&c), &ctx)?
                }
                _ => cons.clone(),
            };
            Some(Repair { param: Atom::param(REPAIR_PARAM), generator: rgen, constraints: rcons, printed: parse(&t.printed, &ctx)? })
        }
    };
    Ok(GeneratorCase { label: entry.label.clone(), generator: gen, constraints: cons, repair })
}

fn row_checks(row: &Table1Row, base: &[GeneratorEntry], opts: &Options) -> Result<Vec<Check>> {
    let ctx = gks_core::parse::ParseContext::default();
    let fam = family(&row.family, &format!("row {}", row.row), &ctx)?;
    let mut out = Vec::new();
    for entry in base.iter().chain(&row.generators) {
        let id = format!("table1/row{:02}/{}", row.row, entry.label);
        let c = case(entry, &ctx)?;
        let rep = replay_case(&c, &fam)?;
        let mut chk = Check::new(&id, entry.typo.is_none(), rep.pass).data(json!({
            "generator": c.generator.to_string(),
            "residual": rep.residual.to_string(),
        }));
        if let Some(t) = &entry.typo {
            chk = chk.note(format!("printed form is a typo: {}", t.justification));
        }
        out.push(chk);
        if let Some(n) = numeric_check(opts, &id, &rep.claim, &[], entry.typo.is_none())? {
            out.push(n);
        }
        if let (Some(r), Some(rep_in)) = (&rep.repair, &c.repair) {
            let differs = r.value.as_ref().is_some_and(|v| *v != rep_in.printed);
            let mut chk = Check::holds(format!("{id}/repair"), r.verified && differs);
            if let Some(v) = &r.value {
                chk = chk.note(format!("{REPAIR_PARAM} = {v} instead of the printed {}", rep_in.printed));
            }
            let corrected = r.corrected.as_ref().map(|g| g.to_string());
            out.push(chk.data(json!({"value": r.value.as_ref().map(|v| v.to_string()), "corrected": corrected})));
        }
    }
    Ok(out)
}

pub fn run(opts: &Options) -> Result<Vec<Check>> {
    let t: Table1 = opts.golden.load("table1.json")?;
    let rows: Vec<Vec<Check>> = t.rows.par_iter().map(|r| row_checks(r, &t.base, opts)).collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}
