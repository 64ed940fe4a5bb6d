//! Linear PDE constraints on auxiliary functions, used as rewrite rules.
//!
//! A constraint such as `F_t - alpha*F_yy + F_yyyy = 0` is solved for one derivative of
//! `F` (the lead); any derivative of `F` at or above the lead is then replaced by the
//! matching derivative of the solved right-hand side.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;

use hashbrown::HashMap;
use num_traits::One;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::expr::{collect_coefficients, Atom, Expr, FuncApp, Rule, Substitution, Symbol};

#[derive(Clone, Debug, PartialEq)]
pub struct FunctionConstraint {
    pub name: Symbol,
    pub params: Vec<Atom>,
    pub lead: SmallVec<[i32; 4]>,
    pub rhs: Expr,
    pub source: Expr,
}

impl FunctionConstraint {
    /// Solve `source = 0` for the derivative `lead` of `name(params)`.
    pub fn solve(source: &Expr, name: &str, params: &[Atom], lead: &[i32]) -> Result<FunctionConstraint> {
        let app = FuncApp {
            name: Symbol::from(name),
            deriv: lead.iter().copied().collect(),
            args: params.iter().cloned().map(Expr::from_atom).collect(),
        };
        let lead_atom = Atom::Func(Arc::new(app));
        let groups = collect_coefficients(source, |a| *a == lead_atom)?;
        let mut coeff = None;
        let mut rest = Expr::zero();
        for (m, c) in groups {
            if m.is_one() {
                rest = c;
            } else if m.factors().len() == 1 && m.factors()[0].1.is_one() {
                coeff = Some(c);
            } else {
                return Err(Error::Structural(format!("constraint is nonlinear in {lead_atom}")));
            }
        }
        let coeff = coeff.ok_or_else(|| Error::Structural(format!("constraint does not contain {lead_atom}")))?;
        if coeff.contains_atom(&lead_atom) || rest.contains_atom(&lead_atom) {
            return Err(Error::Structural(format!("{lead_atom} nested in constraint")));
        }
        let rhs = (-rest).div(&coeff)?;
        Ok(FunctionConstraint { name: Symbol::from(name), params: params.to_vec(), lead: lead.iter().copied().collect(), rhs, source: source.clone() })
    }

    fn excess(&self, app: &FuncApp) -> Option<SmallVec<[i32; 4]>> {
        if app.name != self.name || app.args.len() != self.params.len() {
            return None;
        }
        if app.args.iter().zip(&self.params).any(|(a, p)| a.as_atom() != Some(p)) {
            return None;
        }
        let d: SmallVec<[i32; 4]> = app.deriv.iter().zip(&self.lead).map(|(a, b)| a - b).collect();
        d.iter().all(|&k| k >= 0).then_some(d)
    }
}

/// Ordered rule set; the first applicable rule rewrites a derivative.
#[derive(Clone, Debug, Default)]
pub struct ConstraintSet {
    pub rules: Vec<FunctionConstraint>,
}

const MAX_DEPTH: usize = 64;

impl ConstraintSet {
    pub fn new(rules: Vec<FunctionConstraint>) -> ConstraintSet {
        ConstraintSet { rules }
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn apply(&self, e: &Expr) -> Result<Expr> {
        if self.rules.is_empty() {
            return Ok(e.clone());
        }
        let memo = RefCell::new(HashMap::new());
        self.rewrite(e, &memo, 0)
    }

    fn rewrite(&self, e: &Expr, memo: &RefCell<HashMap<Atom, Expr>>, depth: usize) -> Result<Expr> {
        if depth > MAX_DEPTH {
            return Err(Error::Structural("constraint rewriting does not terminate".into()));
        }
        let mut targets = Vec::new();
        for t in e.terms() {
            for (a, _) in t.mono.factors() {
                if let Atom::Func(app) = a {
                    if self.rules.iter().any(|r| r.excess(app).is_some()) && !targets.contains(a) {
                        targets.push(a.clone());
                    }
                }
            }
        }
        if targets.is_empty() {
            return Ok(e.clone());
        }
        let mut rules = Vec::new();
        for a in targets {
            let cached = memo.borrow().get(&a).cloned();
            let v = match cached {
                Some(v) => v,
                None => {
                    let app = a.as_func().unwrap();
                    let (rule, d) = self.rules.iter().find_map(|r| r.excess(app).map(|d| (r, d))).unwrap();
                    let mut v = rule.rhs.clone();
                    for (p, &k) in rule.params.iter().zip(&d) {
                        for _ in 0..k {
                            v = v.partial(p);
                        }
                    }
                    let v = self.rewrite(&v, memo, depth + 1)?;
                    memo.borrow_mut().insert(a.clone(), v.clone());
                    v
                }
            };
            rules.push(Rule::Atom(a, v));
        }
        Substitution::new(rules).apply(e)
    }
}
