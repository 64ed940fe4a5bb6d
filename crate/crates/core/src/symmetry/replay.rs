//! Verification of listed generators, with one-parameter repair of suspected typos.

use alloc::string::String;

use crate::constraint::ConstraintSet;
use crate::error::Result;
use crate::expr::{collect_coefficients, Atom, Expr, Rule, Substitution};
use crate::numcheck::ZeroClaim;
use crate::pde::Family;

use super::{check_symmetry, Generator};

/// A printed generator, its constraints, and optionally a repair template.
#[derive(Clone, Debug)]
pub struct GeneratorCase {
    pub label: String,
    pub generator: Generator,
    pub constraints: ConstraintSet,
    pub repair: Option<Repair>,
}

/// The printed case rewritten with one unknown parameter `param` at the suspect spot.
#[derive(Clone, Debug)]
pub struct Repair {
    pub param: Atom,
    pub generator: Generator,
    pub constraints: ConstraintSet,
    /// Value of `param` that reproduces the printed case.
    pub printed: Expr,
}

#[derive(Clone, Debug)]
pub struct RepairReport {
    /// Value of the parameter making the residual vanish, if one exists.
    pub value: Option<Expr>,
    pub corrected: Option<Generator>,
    pub corrected_constraints: Option<ConstraintSet>,
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub struct CaseReport {
    pub label: String,
    pub pass: bool,
    pub residual: Expr,
    pub claim: ZeroClaim,
    pub repair: Option<RepairReport>,
}

fn substitute_param(g: &Generator, k: &Atom, v: &Expr) -> Result<Generator> {
    let s = Substitution::atom(k.clone(), v.clone());
    Ok(Generator {
        xi: [s.apply(&g.xi[0])?, s.apply(&g.xi[1])?, s.apply(&g.xi[2])?],
        eta: s.apply(&g.eta)?,
    })
}

fn substitute_constraints(c: &ConstraintSet, k: &Atom, v: &Expr) -> Result<ConstraintSet> {
    let s = Substitution::new([Rule::Atom(k.clone(), v.clone())]);
    let mut out = c.clone();
    for r in &mut out.rules {
        r.rhs = s.apply(&r.rhs)?;
        r.source = s.apply(&r.source)?;
    }
    Ok(out)
}

/// Divide out an exponential factor shared by every term.
fn strip_common_exp(e: &Expr) -> Expr {
    let Some(first) = e.terms().first() else { return e.clone() };
    let Some((Atom::Exp(arg), _)) = first.mono.factors().iter().find(|(a, _)| matches!(a, Atom::Exp(_))) else {
        return e.clone();
    };
    e * &Expr::exp(-arg)
}

/// Solve `residual(k) = 0` identically in every non-parameter atom, for `residual` affine in `k`.
///
/// Returns `None` when no value works.
pub fn solve_one_parameter(residual: &Expr, k: &Atom) -> Result<Option<Expr>> {
    let r = strip_common_exp(residual);
    let groups = collect_coefficients(&r, |a| !matches!(a, Atom::Param(_) | Atom::Surd(_)))?;
    let mut value = None;
    for c in groups.values() {
        let parts = collect_coefficients(c, |a| a == k)?;
        let mut a = Expr::zero();
        let mut b = Expr::zero();
        for (m, v) in parts {
            let e = m.exponent_of(k);
            if !e.is_integer() || *e.numer() > 1 {
                return Ok(None);
            }
            if *e.numer() == 0 {
                a = v;
            } else {
                b = v;
            }
        }
        if !b.is_zero() {
            value = Some((-a).div(&b)?);
            break;
        }
    }
    let Some(v) = value else { return Ok(None) };
    let check = Substitution::atom(k.clone(), v.clone()).apply(residual)?;
    Ok(check.is_zero().then_some(v))
}

pub fn replay_case(case: &GeneratorCase, family: &Family) -> Result<CaseReport> {
    let chk = check_symmetry(&case.generator, family, &case.constraints)?;
    let mut report =
        CaseReport { label: case.label.clone(), pass: chk.is_symmetry, residual: chk.residual, claim: chk.claim, repair: None };
    if report.pass {
        return Ok(report);
    }
    if let Some(rep) = &case.repair {
        let templ = check_symmetry(&rep.generator, family, &rep.constraints)?;
        let value = solve_one_parameter(&templ.residual, &rep.param)?;
        let mut rr = RepairReport { value: value.clone(), corrected: None, corrected_constraints: None, verified: false };
        if let Some(v) = value {
            let g = substitute_param(&rep.generator, &rep.param, &v)?;
            let c = substitute_constraints(&rep.constraints, &rep.param, &v)?;
            rr.verified = check_symmetry(&g, family, &c)?.is_symmetry;
            rr.corrected = Some(g);
            rr.corrected_constraints = Some(c);
        }
        report.repair = Some(rr);
    }
    Ok(report)
}
