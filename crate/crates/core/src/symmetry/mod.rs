//! Point symmetries: prolongation, the linearized symmetry condition and determining systems.

mod detsys;
mod replay;
pub mod span;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;

use hashbrown::HashMap;

use crate::constraint::ConstraintSet;
use crate::error::Result;
use crate::expr::{Atom, Dep, Expr, Indep, JetIndex, Q};
use crate::limits;
use crate::numcheck::ZeroClaim;
use crate::parse::{parse_generator, ParseContext, ParseError};
use crate::pde::{Family, Reducer};

pub use replay::{replay_case, solve_one_parameter, CaseReport, GeneratorCase, Repair, RepairReport};
pub use detsys::{determining_system, split_residual, substitute_ansatz, split_free_coordinates, DeterminingSystem, Equation};

/// `X = xi^1 d_x + xi^2 d_y + xi^3 d_t + eta d_u`.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub xi: [Expr; 3],
    pub eta: Expr,
}

impl Generator {
    /// Generator with unknown coefficients `xi1, xi2, xi3, eta` of `(x, y, t, u)`.
    pub fn general() -> Generator {
        let args = || alloc::vec![Expr::indep(Indep::X), Expr::indep(Indep::Y), Expr::indep(Indep::T), Expr::u()];
        Generator {
            xi: [Expr::func("xi1", args()), Expr::func("xi2", args()), Expr::func("xi3", args())],
            eta: Expr::func("eta", args()),
        }
    }

    pub fn parse(src: &str, ctx: &ParseContext) -> core::result::Result<Generator, ParseError> {
        let [a, b, c, e] = parse_generator(src, ctx)?;
        Ok(Generator { xi: [a, b, c], eta: e })
    }

    /// Characteristic `W = eta - xi^i u_i`.
    pub fn characteristic(&self) -> Expr {
        let mut w = self.eta.clone();
        for d in Indep::ALL {
            w = &w - &(&self.xi[d.index()] * &Expr::jet(Dep::U, JetIndex::unit(d)));
        }
        w
    }

    pub fn is_zero(&self) -> bool {
        self.eta.is_zero() && self.xi.iter().all(Expr::is_zero)
    }
}

impl core::fmt::Display for Generator {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let names = ["d_x", "d_y", "d_t", "d_u"];
        let mut first = true;
        for (c, n) in self.xi.iter().chain(core::iter::once(&self.eta)).zip(names) {
            if c.is_zero() {
                continue;
            }
            let (c, neg) = match c.terms() {
                [t] if t.coeff < Q::from_integer(0.into()) => (-c, true),
                _ => (c.clone(), false),
            };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            if c.is_one() {
                f.write_str(n)?;
            } else if c.len() == 1 {
                write!(f, "{c}*{n}")?;
            } else {
                write!(f, "({c})*{n}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Memoized prolongation coefficients `eta^J`.
pub struct Prolongation<'a> {
    gen: &'a Generator,
    dxi: [[Expr; 3]; 3],
    memo: RefCell<HashMap<JetIndex, Expr>>,
}

impl<'a> Prolongation<'a> {
    pub fn new(gen: &'a Generator) -> Prolongation<'a> {
        let dxi = Indep::ALL.map(|i| Indep::ALL.map(|j| gen.xi[j.index()].d(i)));
        let mut m = HashMap::new();
        m.insert(JetIndex::ZERO, gen.eta.clone());
        Prolongation { gen, dxi, memo: RefCell::new(m) }
    }

    pub fn generator(&self) -> &Generator {
        self.gen
    }

    /// `eta^J` through the last direction of `J` (t, then y, then x).
    pub fn eta(&self, j: JetIndex) -> Expr {
        if let Some(e) = self.memo.borrow().get(&j) {
            return e.clone();
        }
        let d = [Indep::T, Indep::Y, Indep::X].into_iter().find(|d| j.get(*d) > 0).unwrap();
        let e = self.eta_via(j, d);
        self.memo.borrow_mut().insert(j, e.clone());
        e
    }

    /// `eta^J = D_d eta^{J-d} - (D_d xi^k) u_{J-d+k}` for a chosen last direction `d`.
    pub fn eta_via(&self, j: JetIndex, d: Indep) -> Expr {
        let parent = j.lowered(d).expect("direction present in index");
        let mut e = self.eta(parent).d(d);
        for k in Indep::ALL {
            let c = &self.dxi[d.index()][k.index()];
            if !c.is_zero() {
                e = &e - &(c * &Expr::jet(Dep::U, parent.shifted(k)));
            }
        }
        e
    }
}

/// All prolongation coefficients up to order `n`.
pub fn prolong(gen: &Generator, n: u32) -> BTreeMap<JetIndex, Expr> {
    let p = Prolongation::new(gen);
    JetIndex::up_to(n).into_iter().map(|j| (j, p.eta(j))).collect()
}

/// The summands of `pr X (Delta)`, one per coordinate.
pub fn lsc_summands(gen: &Generator, family: &Family) -> Vec<Expr> {
    let delta = family.equation();
    let p = Prolongation::new(gen);
    let mut out = Vec::new();
    for d in Indep::ALL {
        let c = delta.partial(&Atom::Indep(d));
        if !c.is_zero() {
            out.push(&gen.xi[d.index()] * &c);
        }
    }
    for j in family.equation_jets() {
        let c = delta.partial_jet(Dep::U, j);
        if !c.is_zero() {
            out.push(&p.eta(j) * &c);
        }
    }
    out
}

/// `pr X (Delta)` reduced on solutions, with auxiliary constraints applied.
pub fn apply_lsc(gen: &Generator, family: &Family, constraints: &ConstraintSet) -> Result<Expr> {
    let red = Reducer::new(family);
    let mut acc = Expr::zero();
    for s in lsc_summands(gen, family) {
        acc = &acc + &red.reduce(&s)?;
        limits::check(&acc)?;
    }
    constraints.apply(&acc)
}

#[derive(Clone, Debug)]
pub struct SymmetryCheck {
    pub is_symmetry: bool,
    pub residual: Expr,
    /// Separately reduced summands whose sum is the residual, for numeric checking.
    pub claim: ZeroClaim,
}

pub fn check_symmetry(gen: &Generator, family: &Family, constraints: &ConstraintSet) -> Result<SymmetryCheck> {
    let red = Reducer::new(family);
    let mut pieces = Vec::new();
    for s in lsc_summands(gen, family) {
        pieces.push(constraints.apply(&red.reduce(&s)?)?);
    }
    let residual = Expr::sum(&pieces);
    limits::check(&residual)?;
    Ok(SymmetryCheck { is_symmetry: residual.is_zero(), residual, claim: ZeroClaim::new(pieces) })
}
