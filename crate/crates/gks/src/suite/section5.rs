//! Conserved vectors: the formula's output, the recorded closed forms, and their equivalence.

use std::collections::BTreeMap;

use gks_core::conservation::{conserved_vector, density_characteristic, divergence, proportionality, ConservedVector};
use gks_core::constraint::ConstraintSet;
use gks_core::expr::Substitution;
use gks_core::parse::ParseContext;
use gks_core::pde::Family;
use gks_core::symmetry::{check_symmetry, Generator};
use gks_core::Expr;
use rayon::prelude::*;
use serde_json::json;

use crate::context::{constraints, family, generator, param_substitution, substitute_constraints, substitute_family, with_definitions, with_functions};
use crate::golden::{Section5Case, VectorEntry, SECTION5};
use crate::report::Check;
use crate::{parse, Result};

use super::{numeric_check, Options};

/// Everything a vector check needs, after any per-vector parameter specialization.
pub struct Setup {
    pub ctx: ParseContext,
    pub family: Family,
    pub phi: Expr,
    pub constraints: ConstraintSet,
    pub subst: Substitution,
}

pub fn setup(case: &Section5Case) -> Result<Setup> {
    setup_with(case, &BTreeMap::new())
}

/// As [`setup`], with some definitions replaced.
pub fn setup_with(case: &Section5Case, redefine: &BTreeMap<String, String>) -> Result<Setup> {
    let mut ctx = with_functions(ParseContext::default(), &case.functions)?;
    for (alias, target) in &case.identify {
        let e = parse(target, &ctx)?;
        ctx.define(alias, e);
    }
    let defs: Vec<(String, String)> =
        case.definitions.iter().map(|(k, v)| (k.clone(), redefine.get(k).unwrap_or(v).clone())).collect();
    let ctx = with_definitions(ctx, &defs)?;
    Ok(Setup {
        family: family(&case.family, &case.name, &ctx)?,
        phi: parse(&case.phi, &ctx)?,
        constraints: constraints(&case.constraints, &ctx)?,
        ctx,
        subst: Substitution::new([]),
    })
}

impl Setup {
    fn specialize(&self, map: &BTreeMap<String, String>) -> Result<Setup> {
        let s = param_substitution(map, &self.ctx)?;
        Ok(Setup {
            ctx: self.ctx.clone(),
            family: substitute_family(&self.family, &s)?,
            phi: s.apply(&self.phi)?,
            constraints: substitute_constraints(&self.constraints, &s)?,
            subst: s,
        })
    }

    fn parse(&self, src: &str) -> Result<Expr> {
        Ok(self.subst.apply(&parse(src, &self.ctx)?)?)
    }

    fn generator(&self, src: &str) -> Result<Generator> {
        let g = generator(src, &self.ctx)?;
        let s = &self.subst;
        Ok(Generator { xi: [s.apply(&g.xi[0])?, s.apply(&g.xi[1])?, s.apply(&g.xi[2])?], eta: s.apply(&g.eta)? })
    }
}

fn vector_checks(case: &Section5Case, base: &Setup, v: &VectorEntry, opts: &Options) -> Result<Vec<Check>> {
    let id = format!("section5/{}/{}", case.name, v.label);
    let su = if v.specialize.is_empty() { None } else { Some(base.specialize(&v.specialize)?) };
    let su = su.as_ref().unwrap_or(base);
    let mut out = Vec::new();

    let gen = su.generator(&v.generator)?;
    let sym = check_symmetry(&gen, &su.family, &su.constraints)?;
    out.push(Check::holds(format!("{id}/symmetry"), sym.is_symmetry).data(json!({"residual": sym.residual.to_string()})));

    let cv = conserved_vector(&gen, &su.family, &su.phi, &su.constraints)?;
    let div = divergence(&cv, &su.family)?;
    out.push(
        Check::holds(format!("{id}/formula/divergence"), div.is_zero()).data(json!({
            "vector": cv.c.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "residual": div.residual.to_string(),
        })),
    );
    if let Some(n) = numeric_check(opts, &format!("{id}/formula/divergence"), &div.claim, &case.positive, true)? {
        out.push(n);
    }
    let qf = density_characteristic(&cv, &su.family)?;
    let mut nt = Check::new(format!("{id}/formula/nontrivial"), !case.expect_trivial, !qf.is_zero())
        .data(json!({"characteristic": qf.to_string()}));
    if let Some(c) = &v.nontrivial_if {
        nt = nt.note(format!("nontrivial when {c}"));
    } else if case.expect_trivial {
        nt = nt.note("recorded as trivial: the density characteristic vanishes");
    }
    out.push(nt);

    let Some(p) = &v.printed else { return Ok(out) };
    let printed = ConservedVector::new([su.parse(&p.cx)?, su.parse(&p.cy)?, su.parse(&p.ct)?], su.constraints.clone());
    let pdiv = divergence(&printed, &su.family)?;
    let mut chk = Check::new(format!("{id}/printed/divergence"), v.variants.is_empty(), pdiv.is_zero())
        .data(json!({"residual": pdiv.residual.to_string()}));
    if !v.variants.is_empty() {
        chk = chk.note("printed form has typos; see the variants");
    }
    out.push(chk);
    if let Some(n) = numeric_check(opts, &format!("{id}/printed/divergence"), &pdiv.claim, &case.positive, v.variants.is_empty())? {
        out.push(n);
    }

    let mut reference = printed;
    let mut src = [p.cx.clone(), p.cy.clone(), p.ct.clone()];
    let mut redefine = BTreeMap::new();
    for w in &v.variants {
        for (slot, s) in src.iter_mut().zip([&w.cx, &w.cy, &w.ct]) {
            if let Some(s) = s {
                *slot = s.clone();
            }
        }
        redefine.extend(w.redefine.clone());
        let sw = setup_with(case, &redefine)?;
        let sw = if v.specialize.is_empty() { sw } else { sw.specialize(&v.specialize)? };
        let alt = ConservedVector::new([sw.parse(&src[0])?, sw.parse(&src[1])?, sw.parse(&src[2])?], sw.constraints.clone());
        let d = divergence(&alt, &sw.family)?;
        out.push(
            Check::holds(format!("{id}/variant/{}", w.label), d.is_zero())
                .note(w.justification.clone())
                .data(json!({"residual": d.residual.to_string()})),
        );
        if let Some(n) = numeric_check(opts, &format!("{id}/variant/{}", w.label), &d.claim, &case.positive, true)? {
            out.push(n);
        }
        reference = alt;
    }
    let qp = density_characteristic(&reference, &su.family)?;
    let k = proportionality(&qf, &qp)?;
    let mut eq = Check::new(format!("{id}/equivalent"), v.equivalent_to.is_none(), k.is_some() && !qf.is_zero())
        .data(json!({"formula": qf.to_string(), "printed": qp.to_string()}));
    eq = match (&k, &v.equivalent_to) {
        (_, Some(m)) => eq.note(m.justification.clone()),
        (Some(k), None) => eq.note(format!("characteristics agree up to the factor {k}")),
        (None, None) => eq.note("characteristics are not proportional"),
    };
    out.push(eq);
    if let Some(m) = &v.equivalent_to {
        let other = case
            .vectors
            .iter()
            .find(|w| w.label == m.label)
            .ok_or_else(|| crate::AppError::Usage(format!("{id}: no vector {}", m.label)))?;
        let cv = conserved_vector(&su.generator(&other.generator)?, &su.family, &su.phi, &su.constraints)?;
        let qo = density_characteristic(&cv, &su.family)?;
        let k = proportionality(&qo, &qp)?;
        out.push(
            Check::holds(format!("{id}/equivalent-to-{}", m.label), k.is_some() && !qo.is_zero())
                .data(json!({"formula": qo.to_string(), "printed": qp.to_string()})),
        );
    }
    Ok(out)
}

pub fn load(opts: &Options) -> Result<Vec<Section5Case>> {
    SECTION5.iter().map(|n| opts.golden.load(&format!("section5/{n}.json"))).collect()
}

pub fn run(opts: &Options) -> Result<Vec<Check>> {
    let cases = load(opts)?;
    let jobs: Vec<(usize, &VectorEntry)> =
        cases.iter().enumerate().flat_map(|(i, c)| c.vectors.iter().map(move |v| (i, v))).collect();
    let parts: Vec<Vec<Check>> =
        jobs.par_iter().map(|(i, v)| -> Result<Vec<Check>> {
             vector_checks(&cases[*i], &setup(&cases[*i])?, v, opts)
        }).collect::<Result<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}
