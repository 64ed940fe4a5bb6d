//! Building parse contexts, families and constraint sets from golden or command-line text.

use std::collections::BTreeMap;

use gks_core::constraint::{ConstraintSet, FunctionConstraint};
use gks_core::expr::{Rule, Substitution};
use gks_core::parse::ParseContext;
use gks_core::pde::Family;
use gks_core::symmetry::Generator;
use gks_core::{Atom, Expr, Indep};

use crate::golden::{Constraint, FamilySpec, GoldenDir, Table1, Theorems};
use crate::{parse, AppError, Result};

pub fn arg_atom(name: &str) -> Result<Atom> {
    Ok(match name {
        "x" => Atom::Indep(Indep::X),
        "y" => Atom::Indep(Indep::Y),
        "t" => Atom::Indep(Indep::T),
        "u" => Atom::u(),
        _ => return Err(AppError::Usage(format!("unknown function argument {name}"))),
    })
}

pub fn with_functions(mut ctx: ParseContext, functions: &BTreeMap<String, Vec<String>>) -> Result<ParseContext> {
    for (name, args) in functions {
        let args = args.iter().map(|a| arg_atom(a)).collect::<Result<Vec<_>>>()?;
        ctx.declare_function(name, args);
    }
    Ok(ctx)
}

/// Define names in order; each definition may use the previous ones.
pub fn with_definitions(mut ctx: ParseContext, defs: &[(String, String)]) -> Result<ParseContext> {
    for (name, src) in defs {
        let e = parse(src, &ctx)?;
        ctx.define(name, e);
    }
    Ok(ctx)
}

pub fn family(spec: &FamilySpec, name: &str, ctx: &ParseContext) -> Result<Family> {
    let mut fam = Family::generic().named(name);
    for (k, v) in spec {
        if !gks_core::pde::COEFFICIENTS.contains(&k.as_str()) {
            return Err(AppError::Usage(format!("unknown coefficient {k}")));
        }
        let e = parse(v, ctx)?;
        if e.any_atom(&|a| matches!(a, Atom::Indep(_))) {
            return Err(AppError::Engine(gks_core::Error::Domain(format!("{k} must depend on u alone"))));
        }
        fam = fam.with(k, e);
    }
    Ok(fam)
}

/// Solve each constraint for its lead derivative, keeping the given order.
pub fn constraints(list: &[Constraint], ctx: &ParseContext) -> Result<ConstraintSet> {
    let mut rules = Vec::new();
    for c in list {
        let eq = parse(&c.equation, ctx)?;
        let lead = parse(&c.lead, ctx)?;
        let Some(Atom::Func(app)) = lead.as_atom() else {
            return Err(AppError::Usage(format!("constraint lead {} is not a function derivative", c.lead)));
        };
        let params = app
            .args
            .iter()
            .map(|a| a.as_atom().cloned().ok_or_else(|| AppError::Usage(format!("lead {} has compound arguments", c.lead))))
            .collect::<Result<Vec<_>>>()?;
        rules.push(FunctionConstraint::solve(&eq, &app.name, &params, &app.deriv)?);
    }
    Ok(ConstraintSet::new(rules))
}

pub fn generator(src: &str, ctx: &ParseContext) -> Result<Generator> {
    Generator::parse(src, ctx).map_err(|e| AppError::Parse(e.render(src)))
}

/// Simultaneous replacement of parameters by expressions.
pub fn param_substitution(map: &BTreeMap<String, String>, ctx: &ParseContext) -> Result<Substitution> {
    let mut rules = Vec::new();
    for (k, v) in map {
        rules.push(Rule::Atom(Atom::param(k), parse(v, ctx)?));
    }
    Ok(Substitution::new(rules))
}

pub fn substitute_family(fam: &Family, s: &Substitution) -> Result<Family> {
    let mut out = fam.clone();
    for v in out.closed.values_mut() {
        *v = s.apply(v)?;
    }
    Ok(out)
}

pub fn substitute_constraints(c: &ConstraintSet, s: &Substitution) -> Result<ConstraintSet> {
    let mut out = c.clone();
    for r in &mut out.rules {
        r.rhs = s.apply(&r.rhs)?;
        r.source = s.apply(&r.source)?;
    }
    Ok(out)
}

/// Resolve a family given as `generic`, `table1:N`, `quasi`, `case:N`, or inline
/// `f=...; g=...`.
pub fn resolve_family(spec: &str, golden: &GoldenDir) -> Result<(Family, ParseContext)> {
    let ctx = ParseContext::default();
    let spec = spec.trim();
    if spec == "generic" {
        return Ok((Family::generic(), ctx));
    }
    if let Some(n) = spec.strip_prefix("table1:") {
        let n: u32 = n.parse().map_err(|_| AppError::Usage(format!("bad row number in {spec}")))?;
        let t: Table1 = golden.load("table1.json")?;
        let row = t.rows.iter().find(|r| r.row == n).ok_or_else(|| AppError::Usage(format!("no table row {n}")))?;
        return Ok((family(&row.family, spec, &ctx)?, ctx));
    }
    if spec == "quasi" {
        let t: Theorems = golden.load("theorems3.json")?;
        return Ok((family(&t.quasi.solution, spec, &ctx)?, ctx));
    }
    if let Some(n) = spec.strip_prefix("case:") {
        let n: u32 = n.parse().map_err(|_| AppError::Usage(format!("bad case number in {spec}")))?;
        let t: Theorems = golden.load("theorems3.json")?;
        let c = t.nonlinear.cases.iter().find(|c| c.case == n).ok_or_else(|| AppError::Usage(format!("no case {n}")))?;
        let ctx = with_functions(ctx, &c.functions)?;
        return Ok((family(&c.family, spec, &ctx)?, ctx));
    }
    let mut map = FamilySpec::new();
    for part in spec.split(';').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| AppError::Usage(format!("expected name=expr in {part:?}")))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    if map.is_empty() {
        return Err(AppError::Usage(format!("empty family spec {spec:?}")));
    }
    Ok((family(&map, spec, &ctx)?, ctx))
}

/// Parse an expression and apply a substitution.
pub fn parse_subst(src: &str, ctx: &ParseContext, s: &Substitution) -> Result<Expr> {
    Ok(s.apply(&parse(src, ctx)?)?)
}
