//! Adjoint equation, the three self-adjointness systems, and the nonlinear solution cases.

use gks_core::adjoint::{adjoint_equation, self_adjointness, strict_witness, substituted_adjoint, Mode, SelfAdjointness};
use gks_core::constraint::ConstraintSet;
use gks_core::expr::{pythagorean_reduce, Rule, Substitution};
use gks_core::parse::ParseContext;
use gks_core::pde::Family;
use gks_core::{Atom, Expr, Indep};
use serde_json::json;

use crate::context::{constraints, family, param_substitution, with_functions};
use crate::golden::{CaseGolden, Theorems};
use crate::report::Check;
use crate::{parse, AppError, Result};

use super::{numeric_check, Options};

fn diff(a: &Expr, b: &Expr) -> serde_json::Value {
    json!({"difference": (a - b).to_string()})
}

fn system_checks(id: &str, sa: &SelfAdjointness, printed: &str, conditions: &[String], ctx: &ParseContext) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let p = parse(printed, ctx)?;
    out.push(Check::holds(format!("{id}/residual"), sa.residual == p).data(diff(&sa.residual, &p)));
    let mut missing = Vec::new();
    for (i, c) in conditions.iter().enumerate() {
        if !sa.contains(&parse(c, ctx)?) {
            missing.push(i + 1);
        }
    }
    out.push(
        Check::holds(format!("{id}/conditions"), missing.is_empty())
            .note(format!("{} listed, {} computed", conditions.len(), sa.system.len()))
            .data(json!({"missing": missing})),
    );
    Ok(out)
}

fn jet_index(src: &str, ctx: &ParseContext) -> Result<gks_core::JetIndex> {
    match parse(src, ctx)?.as_atom() {
        Some(Atom::Jet(_, j)) => Ok(*j),
        _ => Err(AppError::Usage(format!("{src} is not a jet"))),
    }
}

fn xyt() -> Vec<Atom> {
    vec![Atom::Indep(Indep::X), Atom::Indep(Indep::Y), Atom::Indep(Indep::T)]
}

/// The condition on `phi(x, y, t)` for `r = u/2 + c`, `h = g'`, specialized to a case.
fn case_condition(cond: &Expr, fam: &Family, phi: &Expr, cons: &ConstraintSet) -> Result<Expr> {
    let half_u = Expr::u().scale(&gks_core::Q::new(1.into(), 2.into()));
    let c = Substitution::atom(Atom::param("c"), &fam.coefficient("r") - &half_u).apply(cond)?;
    let c = fam.specialize(&c)?;
    let c = Substitution::new([Rule::Function { name: "phi".into(), params: xyt(), body: phi.clone() }]).apply(&c)?;
    Ok(pythagorean_reduce(&cons.apply(&c)?))
}

fn case_checks(c: &CaseGolden, cond: &[Expr], opts: &Options) -> Result<Vec<Check>> {
    let id = format!("theorems/case{}", c.case);
    let ctx = with_functions(ParseContext::default(), &c.functions)?;
    let mut out = Vec::new();

    let fam = family(&c.family, &id, &ctx)?;
    let thm = family(&c.theorem_family, &id, &ctx)?;
    let ren = param_substitution(&c.rename, &ctx)?;
    let mut same = true;
    for k in gks_core::pde::COEFFICIENTS {
        same &= ren.apply(&thm.coefficient(k))? == fam.coefficient(k);
    }
    out.push(Check::holds(format!("{id}/rename"), same).data(json!({"rename": c.rename})));

    let phi = parse(&c.phi, &ctx)?;
    let cons = constraints(&c.constraints, &ctx)?;
    let (res, claim) = substituted_adjoint(&fam, &phi, &cons)?;
    let res = pythagorean_reduce(&res);
    out.push(Check::holds(format!("{id}/self-adjoint"), res.is_zero()).data(json!({"residual": res.to_string()})));
    if let Some(n) = numeric_check(opts, &format!("{id}/self-adjoint"), &claim, &c.positive, true)? {
        out.push(n);
    }

    let names = ["condition", "condition-u2", "condition-u1"];
    for (name, e) in names.iter().zip(cond) {
        let r = case_condition(e, &fam, &phi, &cons)?;
        out.push(Check::holds(format!("{id}/{name}"), r.is_zero()).data(json!({"residual": r.to_string()})));
    }
    Ok(out)
}

pub fn run(opts: &Options) -> Result<Vec<Check>> {
    let t: Theorems = opts.golden.load("theorems3.json")?;
    let generic = Family::generic();
    let ctx = ParseContext::default();
    let mut out = Vec::new();

    let adj = adjoint_equation(&generic);
    let printed = parse(&t.adjoint.printed, &ctx)?;
    let corrected = parse(&t.adjoint.corrected, &ctx)?;
    out.push(
        Check::new("theorems/adjoint/printed", false, adj == printed)
            .note(t.adjoint.justification.clone())
            .data(diff(&adj, &printed)),
    );
    out.push(Check::holds("theorems/adjoint/corrected", adj == corrected).data(diff(&adj, &corrected)));

    // strict
    let s = self_adjointness(&generic, Mode::Strict)?;
    let p = parse(&t.strict.residual, &ctx)?;
    out.push(Check::holds("theorems/strict/residual", s.residual == p).data(diff(&s.residual, &p)));
    for (jet, v) in &t.strict.witness {
        let got = s.jet_coefficient(jet_index(jet, &ctx)?)?;
        let want = parse(v, &ctx)?;
        out.push(Check::holds(format!("theorems/strict/coefficient-{jet}"), got == want).note(format!("{got}")));
    }
    let fails = strict_witness(&s)?.is_some();
    out.push(Check::new("theorems/strict/not-self-adjoint", t.strict.verdict == "fails", fails));
    let zero = ["f", "g", "h", "r"].iter().fold(Family::generic(), |f, k| f.with(k, Expr::zero()));
    let z = self_adjointness(&zero, Mode::Strict)?;
    out.push(
        Check::new("theorems/strict/zero-coefficients", t.strict.verdict == "fails", strict_witness(&z)?.is_some())
            .note("constant u_xxxx coefficient survives with f = g = h = r = 0"),
    );

    // quasi
    let qctx = with_functions(ctx.clone(), &t.quasi.functions)?;
    let q = self_adjointness(&generic, Mode::Quasi)?;
    out.extend(system_checks("theorems/quasi", &q, &t.quasi.residual, &t.quasi.conditions, &qctx)?);
    let sol = family(&t.quasi.solution, "quasi", &qctx)?;
    let phi = parse(&t.quasi.phi, &qctx)?;
    let (res, claim) = substituted_adjoint(&sol, &phi, &ConstraintSet::default())?;
    out.push(Check::new("theorems/quasi/solution", t.quasi.verdict != "fails", res.is_zero()).data(json!({"residual": res.to_string()})));
    if let Some(n) = numeric_check(opts, "theorems/quasi/solution", &claim, &[], true)? {
        out.push(n);
    }
    let (res_c, _) = substituted_adjoint(&sol, &(&phi * &Expr::param("c")), &ConstraintSet::default())?;
    out.push(Check::holds("theorems/quasi/solution-scaled", res_c.is_zero()));

    // nonlinear
    let n = &t.nonlinear;
    let nctx = with_functions(ctx.clone(), &n.functions)?;
    let nl = self_adjointness(&generic, Mode::Nonlinear)?;
    out.extend(system_checks("theorems/nonlinear", &nl, &n.residual, &n.conditions, &nctx)?);
    let args = vec![Atom::Indep(Indep::X), Atom::Indep(Indep::Y), Atom::Indep(Indep::T), Atom::u()];
    let to_quasi = Substitution::new([Rule::Function { name: "phi".into(), params: args, body: Mode::Quasi.substitution() }]);
    let restricted = to_quasi.apply(&nl.residual)?;
    out.push(Check::holds("theorems/nonlinear/contains-quasi", restricted == q.residual).data(diff(&restricted, &q.residual)));

    let fctx = with_functions(ctx.clone(), &n.firstsol.functions)?;
    let ffam = family(&n.firstsol.family, "nonlinear", &fctx)?;
    let fphi = Expr::func("phi", xyt().into_iter().map(Expr::from_atom).collect());
    let (fres, _) = substituted_adjoint(&ffam, &fphi, &ConstraintSet::default())?;
    let cond = parse(&n.condition, &fctx)?;
    out.push(Check::holds("theorems/nonlinear/condition", fres.monic() == cond.monic()).data(diff(&fres, &-&cond)));
    let mut conds = vec![cond.clone()];
    let mut d = cond.clone();
    let mut derivs = Vec::new();
    for _ in 0..2 {
        d = d.partial(&Atom::u());
        derivs.push(d.clone());
    }
    for (i, (src, k)) in n.condition_u_derivatives.iter().zip([2, 1]).enumerate() {
        let p = parse(src, &fctx)?;
        let got = &derivs[k - 1];
        out.push(
            Check::holds(format!("theorems/nonlinear/condition-u{k}"), got.monic() == p.monic())
                .data(json!({"computed": got.to_string(), "index": i})),
        );
        conds.push(p);
    }
    for c in &n.cases {
        out.extend(case_checks(c, &conds, opts)?);
    }
    Ok(out)
}
