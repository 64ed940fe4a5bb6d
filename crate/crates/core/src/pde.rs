//! The equation family and reduction on its solutions.
//!
//! ```text
//! u_t = 1/2 u_x^2 + h(u) u_y^2 + r(u) u_xx + g(u) u_yy - u_xxxx - 2 u_xxyy - u_yyyy + f(u)
//! ```

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;

use hashbrown::HashMap;

use crate::error::Result;
use crate::expr::{Atom, Dep, Expr, Indep, JetIndex, Rule, Substitution};
use crate::limits;

pub const COEFFICIENTS: [&str; 4] = ["f", "g", "h", "r"];

/// A member or subfamily, fixed by closed forms for some of `f, g, h, r`.
///
/// Coefficients without a closed form stay as abstract functions of `u`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Family {
    pub name: String,
    /// Closed forms in `u`, keyed by coefficient name.
    pub closed: BTreeMap<String, Expr>,
    /// Free-text parameter assumptions, e.g. `alpha != 0`.
    pub assumptions: Vec<String>,
}

impl Family {
    pub fn generic() -> Family {
        Family { name: "generic".into(), ..Default::default() }
    }

    pub fn with(mut self, coeff: &str, body: Expr) -> Family {
        self.closed.insert(coeff.into(), body);
        self
    }

    pub fn named(mut self, name: &str) -> Family {
        self.name = name.into();
        self
    }

    pub fn coefficient(&self, name: &str) -> Expr {
        self.closed.get(name).cloned().unwrap_or_else(|| Expr::func(name, alloc::vec![Expr::u()]))
    }

    /// Substitution replacing abstract coefficient symbols by the closed forms.
    pub fn rules(&self) -> Vec<Rule> {
        self.closed
            .iter()
            .map(|(n, b)| Rule::Function { name: n.as_str().into(), params: alloc::vec![Atom::u()], body: b.clone() })
            .collect()
    }

    pub fn specialize(&self, e: &Expr) -> Result<Expr> {
        if self.closed.is_empty() {
            return Ok(e.clone());
        }
        Substitution::new(self.rules()).apply(e)
    }

    /// Right-hand side of the normal form `u_t = rhs`.
    pub fn rhs(&self) -> Expr {
        let j = |ix, iy| Expr::jet(Dep::U, JetIndex::new(ix, iy, 0));
        let terms = [
            Expr::rational(1, 2) * j(1, 0).pow_int(2),
            self.coefficient("h") * j(0, 1).pow_int(2),
            self.coefficient("r") * j(2, 0),
            self.coefficient("g") * j(0, 2),
            -j(4, 0),
            Expr::int(-2) * j(2, 2),
            -j(0, 4),
            self.coefficient("f"),
        ];
        Expr::sum(&terms)
    }

    /// The equation `Delta = rhs - u_t`.
    pub fn equation(&self) -> Expr {
        &self.rhs() - &Expr::jet(Dep::U, JetIndex::unit(Indep::T))
    }

    /// Jets the equation depends on, in increasing order.
    pub fn equation_jets(&self) -> Vec<JetIndex> {
        let mut v = Vec::new();
        self.equation().for_each_atom(&mut |a| {
            if let Atom::Jet(Dep::U, j) = a {
                if !v.contains(j) {
                    v.push(*j);
                }
            }
        });
        v.sort_by_key(|j: &JetIndex| (j.order(), *j));
        v
    }
}

/// Replaces every jet with a t-derivative by its value on solutions.
///
/// Each value is memoized and built from lower t-order values, so the result is free of
/// `u_t` and its derivatives.
pub struct Reducer {
    rhs: Expr,
    memo: RefCell<HashMap<JetIndex, Expr>>,
}

impl Reducer {
    pub fn new(family: &Family) -> Reducer {
        Reducer { rhs: family.rhs(), memo: RefCell::new(HashMap::new()) }
    }

    /// Value of `u_J` on solutions, for `J` with at least one t.
    pub fn value(&self, j: JetIndex) -> Result<Expr> {
        if let Some(e) = self.memo.borrow().get(&j) {
            return Ok(e.clone());
        }
        let e = if j == JetIndex::unit(Indep::T) {
            self.rhs.clone()
        } else if j.ix > 0 {
            self.value(j.lowered(Indep::X).unwrap())?.d(Indep::X)
        } else if j.iy > 0 {
            self.value(j.lowered(Indep::Y).unwrap())?.d(Indep::Y)
        } else {
            let lower = self.value(j.lowered(Indep::T).unwrap())?;
            self.reduce(&lower.d(Indep::T))?
        };
        limits::check(&e)?;
        self.memo.borrow_mut().insert(j, e.clone());
        Ok(e)
    }

    pub fn reduce(&self, e: &Expr) -> Result<Expr> {
        let mut tjets = Vec::new();
        e.for_each_atom(&mut |a| {
            if let Atom::Jet(Dep::U, j) = a {
                if j.it > 0 && !tjets.contains(j) {
                    tjets.push(*j);
                }
            }
        });
        if tjets.is_empty() {
            return Ok(e.clone());
        }
        tjets.sort_by_key(|j| (j.it, j.order()));
        let mut rules = Vec::with_capacity(tjets.len());
        for j in tjets {
            rules.push(Rule::Atom(Atom::Jet(Dep::U, j), self.value(j)?));
        }
        let r = Substitution::new(rules).apply(e)?;
        limits::check(&r)?;
        Ok(r)
    }
}

/// One-shot reduction on solutions of `family`.
pub fn reduce_on_solutions(e: &Expr, family: &Family) -> Result<Expr> {
    Reducer::new(family).reduce(e)
}
