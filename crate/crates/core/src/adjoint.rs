//! Formal Lagrangian, variational derivatives and self-adjointness residual systems.
//!
//! The adjoint is `-E_u(v * Delta)`, the orientation in which the `v_t` term carries a
//! minus sign and the fourth-order block reads `v_yyyy + 2 v_xxyy + v_xxxx`.

use alloc::vec::Vec;

use crate::constraint::ConstraintSet;
use crate::error::{Error, Result};
use crate::expr::{total_derivative_multi, Atom, Dep, Expr, Indep, JetIndex, Q, Rule, Substitution};
use crate::limits;
use crate::numcheck::ZeroClaim;
use crate::pde::{Family, Reducer};
use crate::symmetry::{split_residual, Equation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Strict,
    Quasi,
    Nonlinear,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Strict, Mode::Quasi, Mode::Nonlinear];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Strict => "strict",
            Mode::Quasi => "quasi",
            Mode::Nonlinear => "nonlinear",
        }
    }

    pub fn from_name(s: &str) -> Option<Mode> {
        Mode::ALL.into_iter().find(|m| m.name() == s)
    }

    /// The substitution `v = u`, `v = phi(u)` or `v = phi(x,y,t,u)`.
    pub fn substitution(self) -> Expr {
        match self {
            Mode::Strict => Expr::u(),
            Mode::Quasi => Expr::func("phi", alloc::vec![Expr::u()]),
            Mode::Nonlinear => Expr::func(
                "phi",
                alloc::vec![Expr::indep(Indep::X), Expr::indep(Indep::Y), Expr::indep(Indep::T), Expr::u()],
            ),
        }
    }
}

/// Jet indices of `dep` occurring in `e`, by increasing order.
pub fn jets_of(e: &Expr, dep: Dep) -> Vec<JetIndex> {
    let mut v = Vec::new();
    e.for_each_atom(&mut |a| {
        if let Atom::Jet(d, j) = a {
            if *d == dep && !v.contains(j) {
                v.push(*j);
            }
        }
    });
    v.sort_by_key(|j: &JetIndex| (j.order(), *j));
    v
}

/// `dL/dw + sum_J (-1)^|J| D^J (dL/dw_J)` over the jets present in `l`.
pub fn euler_lagrange(l: &Expr, dep: Dep) -> Expr {
    let mut acc = Expr::zero();
    for j in jets_of(l, dep) {
        let p = l.partial_jet(dep, j);
        if p.is_zero() {
            continue;
        }
        let t = total_derivative_multi(&p, j);
        acc = if j.order() % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

pub fn formal_lagrangian(family: &Family) -> Expr {
    &Expr::v() * &family.equation()
}

pub fn adjoint_equation(family: &Family) -> Expr {
    -euler_lagrange(&formal_lagrangian(family), Dep::U)
}

/// Replace the nonlocal variable and all its jets by `value` and its total derivatives.
pub fn substitute_v(e: &Expr, value: &Expr) -> Result<Expr> {
    Substitution::new([Rule::Dependent { dep: Dep::V, value: value.clone() }]).apply(e)
}

#[derive(Clone, Debug)]
pub struct SelfAdjointness {
    pub mode: Option<Mode>,
    pub substitution: Expr,
    /// The adjoint after the substitution, reduced on solutions.
    pub residual: Expr,
    /// Coefficients of the residual by jet monomial, each scaled to leading coefficient 1.
    pub system: Vec<Equation>,
}

impl SelfAdjointness {
    /// Raw (unscaled) coefficient of `u_J` in the residual.
    pub fn jet_coefficient(&self, j: JetIndex) -> Result<Expr> {
        let col = crate::expr::collect_jet_coefficients(&self.residual, 1)?;
        let m = Expr::jet(Dep::U, j).terms()[0].mono.clone();
        Ok(col.coefficient(&m).cloned().unwrap_or_else(Expr::zero))
    }

    pub fn contains(&self, e: &Expr) -> bool {
        let m = e.monic();
        self.system.iter().any(|q| q.expr == m)
    }
}

/// The adjoint with `v = value`, reduced on solutions and rewritten by `constraints`.
pub fn substituted_adjoint(family: &Family, value: &Expr, constraints: &ConstraintSet) -> Result<(Expr, ZeroClaim)> {
    if value.is_zero() {
        return Err(Error::Domain("the substitution for v must be nonzero".into()));
    }
    let adj = adjoint_equation(family);
    let red = Reducer::new(family);
    let mut pieces = Vec::new();
    for t in adj.terms() {
        let single = Expr::from_terms(alloc::vec![t.clone()]);
        let s = substitute_v(&single, value)?;
        pieces.push(constraints.apply(&red.reduce(&s)?)?);
    }
    let residual = Expr::sum(&pieces);
    limits::check(&residual)?;
    Ok((residual, ZeroClaim::new(pieces)))
}

pub fn self_adjointness_with(family: &Family, value: &Expr, mode: Option<Mode>) -> Result<SelfAdjointness> {
    let (residual, _) = substituted_adjoint(family, value, &ConstraintSet::default())?;
    let system = split_residual(&residual)?;
    Ok(SelfAdjointness { mode, substitution: value.clone(), residual, system })
}

pub fn self_adjointness(family: &Family, mode: Mode) -> Result<SelfAdjointness> {
    self_adjointness_with(family, &mode.substitution(), Some(mode))
}

/// The strict residual's coefficient of `u_xxxx` when it is a nonzero rational: no choice
/// of the coefficient functions can cancel it.
pub fn strict_witness(report: &SelfAdjointness) -> Result<Option<Q>> {
    let c = report.jet_coefficient(JetIndex::new(4, 0, 0))?;
    Ok(c.as_constant().filter(|q| !num_traits::Zero::is_zero(q)))
}
