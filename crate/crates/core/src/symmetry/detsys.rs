use alloc::string::String;
use alloc::vec::Vec;

use crate::constraint::ConstraintSet;
use crate::error::Result;
use crate::expr::{collect_coefficients, collect_jet_coefficients, Atom, Expr, Indep, Monomial, Rule, Substitution};
use crate::pde::Family;

use super::{apply_lsc, Generator};

/// One determining equation: the coefficient of a jet monomial, scaled to leading coefficient 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Equation {
    pub jets: Monomial,
    pub expr: Expr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeterminingSystem {
    pub family: String,
    pub equations: Vec<Equation>,
}

impl DeterminingSystem {
    pub fn contains(&self, e: &Expr) -> bool {
        let m = e.monic();
        self.equations.iter().any(|q| q.expr == m)
    }

    pub fn exprs(&self) -> impl Iterator<Item = &Expr> {
        self.equations.iter().map(|q| &q.expr)
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }
}

/// Split a reduced residual into its determining equations, dropping duplicates.
pub fn split_residual(residual: &Expr) -> Result<Vec<Equation>> {
    let mut out: Vec<Equation> = Vec::new();
    for (jets, c) in collect_jet_coefficients(residual, 1)?.entries {
        let expr = c.monic();
        if !out.iter().any(|q| q.expr == expr) {
            out.push(Equation { jets, expr });
        }
    }
    Ok(out)
}

/// Determining equations of the unknown generator for `family`.
pub fn determining_system(family: &Family) -> Result<DeterminingSystem> {
    let residual = apply_lsc(&Generator::general(), family, &ConstraintSet::default())?;
    Ok(DeterminingSystem { family: family.name.clone(), equations: split_residual(&residual)? })
}

/// Rewrite every equation under a generator ansatz for the unknowns `xi1, xi2, xi3, eta`.
///
/// Each rewritten equation is further split by powers of any coordinate that no unknown
/// function depends on. Equations that vanish are dropped; the rest are rescaled and
/// deduplicated.
pub fn substitute_ansatz(ds: &DeterminingSystem, ansatz: &Generator) -> Result<DeterminingSystem> {
    let params = || alloc::vec![Atom::Indep(Indep::X), Atom::Indep(Indep::Y), Atom::Indep(Indep::T), Atom::u()];
    let rule = |n: &str, body: &Expr| Rule::Function { name: n.into(), params: params(), body: body.clone() };
    let sub = Substitution::new([
        rule("xi1", &ansatz.xi[0]),
        rule("xi2", &ansatz.xi[1]),
        rule("xi3", &ansatz.xi[2]),
        rule("eta", &ansatz.eta),
    ]);
    let mut equations: Vec<Equation> = Vec::new();
    for q in &ds.equations {
        for e in split_free_coordinates(&sub.apply(&q.expr)?)? {
            let expr = e.monic();
            if !equations.iter().any(|p| p.expr == expr) {
                equations.push(Equation { jets: q.jets.clone(), expr });
            }
        }
    }
    Ok(DeterminingSystem { family: ds.family.clone(), equations })
}

/// Coefficients of `e` with respect to the coordinates that occur in no function argument.
pub fn split_free_coordinates(e: &Expr) -> Result<Vec<Expr>> {
    if e.is_zero() {
        return Ok(Vec::new());
    }
    let mut bound: Vec<Atom> = Vec::new();
    e.for_each_atom(&mut |a| {
        if let Atom::Func(app) = a {
            for arg in &app.args {
                arg.for_each_atom(&mut |b| {
                    if !bound.contains(b) {
                        bound.push(b.clone());
                    }
                });
            }
        }
    });
    let free = |a: &Atom| matches!(a, Atom::Indep(_)) && !bound.contains(a);
    let parts = collect_coefficients(e, free)?;
    if parts.len() == 1 && parts.keys().next().is_some_and(Monomial::is_one) {
        return Ok(parts.into_values().collect());
    }
    let mut out = Vec::new();
    for c in parts.into_values() {
        out.extend(split_free_coordinates(&c)?);
    }
    Ok(out)
}
