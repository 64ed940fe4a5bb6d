//! Simultaneous substitution of atoms, function symbols and dependent variables.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;

use hashbrown::HashMap;
use num_traits::{One, Zero};

use super::{ex, Atom, Dep, Exponent, Expr, FuncApp, Indep, JetIndex, Monomial, Q, Symbol, TermMap};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum Rule {
    /// Replace one atom everywhere, including inside function arguments.
    Atom(Atom, Expr),
    /// `name(params) = body`; derivative nodes map to derivatives of the body.
    Function { name: Symbol, params: Vec<Atom>, body: Expr },
    /// Replace a dependent variable; each jet `w_J` becomes `D^J value`.
    Dependent { dep: Dep, value: Expr },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    UnusedParameter { function: String, param: String },
}

pub struct Substitution {
    atoms: HashMap<Atom, Expr>,
    functions: HashMap<Symbol, (Vec<Atom>, Expr)>,
    dependents: HashMap<Dep, RefCell<HashMap<JetIndex, Expr>>>,
    cache: RefCell<HashMap<Atom, Option<Expr>>>,
    warnings: Vec<Warning>,
}

impl Substitution {
    pub fn new(rules: impl IntoIterator<Item = Rule>) -> Substitution {
        let mut s = Substitution {
            atoms: HashMap::new(),
            functions: HashMap::new(),
            dependents: HashMap::new(),
            cache: RefCell::new(HashMap::new()),
            warnings: Vec::new(),
        };
        for r in rules {
            match r {
                Rule::Atom(a, e) => {
                    s.atoms.insert(a, e);
                }
                Rule::Function { name, params, body } => {
                    for p in &params {
                        if !body.contains_atom(p) {
                            s.warnings.push(Warning::UnusedParameter {
                                function: String::from(&*name),
                                param: format!("{}", Expr::from_atom(p.clone())),
                            });
                        }
                    }
                    s.functions.insert(name, (params, body));
                }
                Rule::Dependent { dep, value } => {
                    let mut m = HashMap::new();
                    m.insert(JetIndex::ZERO, value);
                    s.dependents.insert(dep, RefCell::new(m));
                }
            }
        }
        s
    }

    pub fn atom(a: Atom, e: Expr) -> Substitution {
        Substitution::new([Rule::Atom(a, e)])
    }

    pub fn warnings(&self) -> &[Warning] {
        &self.warnings
    }

    pub fn apply(&self, e: &Expr) -> Result<Expr> {
        let mut tm = TermMap::new();
        for t in e.terms() {
            let mut keep = Monomial::one();
            let mut factor: Option<Expr> = None;
            for (a, x) in t.mono.factors() {
                match self.atom_value(a)? {
                    None => {
                        let mut m = smallvec::SmallVec::new();
                        m.push((a.clone(), *x));
                        keep = keep.mul(&Monomial(m)).mono;
                    }
                    Some(r) => {
                        let p = if x.is_integer() && *x > Exponent::zero() {
                            r.pow_int(x.to_integer() as u32)
                        } else {
                            r.pow(*x)?
                        };
                        factor = Some(match factor {
                            None => p,
                            Some(f) => &f * &p,
                        });
                        if factor.as_ref().is_some_and(Expr::is_zero) {
                            break;
                        }
                    }
                }
            }
            match factor {
                None => tm.add_term(keep, t.coeff.clone()),
                Some(f) => tm.add_product(&f, &t.coeff, &keep),
            }
        }
        Ok(tm.finish())
    }

    fn atom_value(&self, a: &Atom) -> Result<Option<Expr>> {
        if let Some(v) = self.cache.borrow().get(a) {
            return Ok(v.clone());
        }
        let v = self.compute(a)?;
        self.cache.borrow_mut().insert(a.clone(), v.clone());
        Ok(v)
    }

    fn compute(&self, a: &Atom) -> Result<Option<Expr>> {
        if let Some(e) = self.atoms.get(a) {
            return Ok(Some(e.clone()));
        }
        match a {
            Atom::Surd(_) | Atom::Param(_) | Atom::Indep(_) => Ok(None),
            Atom::Jet(dep, j) => match self.dependents.get(dep) {
                None => Ok(None),
                Some(memo) => Ok(Some(dependent_jet(memo, *j))),
            },
            Atom::Func(app) => {
                let mut changed = false;
                let mut args = Vec::with_capacity(app.args.len());
                for x in &app.args {
                    let y = self.apply(x)?;
                    changed |= y != *x;
                    args.push(y);
                }
                if let Some((params, body)) = self.functions.get(&app.name) {
                    if params.len() != args.len() {
                        return Err(Error::Structural(format!(
                            "{} applied to {} arguments, defined with {}",
                            app.name,
                            args.len(),
                            params.len()
                        )));
                    }
                    let d = differentiate_body(body, params, &app.deriv)?;
                    let pairs: Vec<Rule> = params
                        .iter()
                        .zip(&args)
                        .filter(|(p, x)| x.as_atom() != Some(*p))
                        .map(|(p, x)| Rule::Atom(p.clone(), x.clone()))
                        .collect();
                    if pairs.is_empty() {
                        return Ok(Some(d));
                    }
                    return Substitution::new(pairs).apply(&d).map(Some);
                }
                if !changed {
                    return Ok(None);
                }
                let g = FuncApp { name: app.name.clone(), deriv: app.deriv.clone(), args };
                Ok(Some(Expr::func_app(g)))
            }
            Atom::Exp(x) | Atom::Sin(x) | Atom::Cos(x) | Atom::Radical(x) => {
                let y = self.apply(x)?;
                if y == *x {
                    return Ok(None);
                }
                Ok(Some(match a {
                    Atom::Exp(_) => Expr::exp(y),
                    Atom::Sin(_) => Expr::sin(y),
                    Atom::Cos(_) => Expr::cos(y),
                    _ => y,
                }))
            }
        }
    }
}

fn dependent_jet(memo: &RefCell<HashMap<JetIndex, Expr>>, j: JetIndex) -> Expr {
    if let Some(e) = memo.borrow().get(&j) {
        return e.clone();
    }
    let d = [Indep::T, Indep::Y, Indep::X].into_iter().find(|d| j.get(*d) > 0).expect("nonzero index");
    let lower = dependent_jet(memo, j.lowered(d).expect("positive"));
    let e = lower.d(d);
    memo.borrow_mut().insert(j, e.clone());
    e
}

fn differentiate_body(body: &Expr, params: &[Atom], deriv: &[i32]) -> Result<Expr> {
    let mut e = body.clone();
    for (p, &k) in params.iter().zip(deriv) {
        if k < 0 {
            for _ in 0..-k {
                e = integrate(&e, p)?;
            }
        } else {
            for _ in 0..k {
                e = e.partial(p);
            }
        }
    }
    Ok(e)
}

/// Antiderivative in `var` of a polynomial in `var`, or of a single function of `var`.
pub fn integrate(e: &Expr, var: &Atom) -> Result<Expr> {
    let mut tm = TermMap::new();
    for t in e.terms() {
        let k = t.mono.exponent_of(var);
        let (_, rest) = t.mono.split(|a| a == var);
        let nested: Vec<&Atom> = rest
            .factors()
            .iter()
            .map(|(a, _)| a)
            .filter(|a| a.children().iter().any(|c| c.contains_atom(var)))
            .collect();
        if nested.is_empty() {
            if !(k.is_integer() && k >= Exponent::zero()) {
                return Err(Error::Unsupported(format!("antiderivative of {var:?}^{k}")));
            }
            let n = k.to_integer() + 1;
            let mut m = rest.0.clone();
            m.push((var.clone(), ex(n)));
            tm.add_normal(Monomial::normalize(m), &t.coeff / Q::from_integer(n.into()));
            continue;
        }
        let single = k.is_zero() && nested.len() == 1 && rest.exponent_of(nested[0]).is_one();
        match (single, nested[0]) {
            (true, Atom::Func(app))
                if app.args.len() == 1 && app.args[0].as_atom() == Some(var) =>
            {
                let g = app.with_deriv(0, -1);
                let (_, others) = rest.split(|a| a == nested[0]);
                let mut m = others.0.clone();
                m.push((Atom::Func(Arc::new(g)), Exponent::one()));
                tm.add_normal(Monomial::normalize(m), t.coeff.clone());
            }
            _ => return Err(Error::Unsupported(format!("antiderivative in {var:?} of a non-polynomial term"))),
        }
    }
    Ok(tm.finish())
}

impl Expr {
    /// Replace one atom.
    pub fn subs(&self, a: &Atom, by: &Expr) -> Result<Expr> {
        Substitution::atom(a.clone(), by.clone()).apply(self)
    }

    pub fn subs_all(&self, rules: impl IntoIterator<Item = Rule>) -> Result<Expr> {
        Substitution::new(rules).apply(self)
    }
}
