//! Derivations: total derivatives in x, y, t and partial derivatives in jet coordinates.

use hashbrown::HashMap;

use super::{Atom, Dep, Expr, Indep, JetIndex, Q, TermMap};

/// A derivation fixed by its action on primitive atoms; composite atoms follow the chain rule.
pub trait Derivation {
    /// Derivative of a parameter, independent variable or jet; `None` means zero.
    fn primitive(&self, a: &Atom) -> Option<Expr>;
}

struct Total(Indep);

impl Derivation for Total {
    fn primitive(&self, a: &Atom) -> Option<Expr> {
        match a {
            Atom::Indep(d) if *d == self.0 => Some(Expr::one()),
            Atom::Jet(dep, j) => Some(Expr::jet(*dep, j.shifted(self.0))),
            _ => None,
        }
    }
}

struct Partial<'a>(&'a Atom);

impl Derivation for Partial<'_> {
    fn primitive(&self, a: &Atom) -> Option<Expr> {
        (a == self.0).then(Expr::one)
    }
}

pub struct Deriver<'a, D: Derivation> {
    d: &'a D,
    cache: HashMap<Atom, Expr>,
}

impl<'a, D: Derivation> Deriver<'a, D> {
    pub fn new(d: &'a D) -> Self {
        Deriver { d, cache: HashMap::new() }
    }

    fn atom(&mut self, a: &Atom) -> Expr {
        if let Some(x) = self.cache.get(a) {
            return x.clone();
        }
        let r = match a {
            Atom::Surd(_) => Expr::zero(),
            Atom::Param(_) | Atom::Indep(_) | Atom::Jet(..) => self.d.primitive(a).unwrap_or_else(Expr::zero),
            Atom::Func(app) => {
                let mut tm = TermMap::new();
                for (k, arg) in app.args.iter().enumerate() {
                    let da = self.expr(arg);
                    if !da.is_zero() {
                        tm.add_expr(&(&da * &Expr::func_app(app.with_deriv(k, 1))));
                    }
                }
                tm.finish()
            }
            Atom::Exp(arg) => &self.expr(arg) * &Expr::exp(arg.clone()),
            Atom::Sin(arg) => &self.expr(arg) * &Expr::cos(arg.clone()),
            Atom::Cos(arg) => -(&self.expr(arg) * &Expr::sin(arg.clone())),
            Atom::Radical(base) => self.expr(base),
        };
        self.cache.insert(a.clone(), r.clone());
        r
    }

    pub fn expr(&mut self, e: &Expr) -> Expr {
        let mut tm = TermMap::new();
        for t in e.terms() {
            for (i, (a, ex)) in t.mono.factors().iter().enumerate() {
                let da = self.atom(a);
                if da.is_zero() {
                    continue;
                }
                let c = &t.coeff * Q::new((*ex.numer()).into(), (*ex.denom()).into());
                tm.add_product(&da, &c, &t.mono.lower_at(i));
            }
        }
        tm.finish()
    }
}

/// Total derivative `D_d`, with every jet coordinate carried one order up.
pub fn total_derivative(e: &Expr, d: Indep) -> Expr {
    Deriver::new(&Total(d)).expr(e)
}

/// `D^J e`, applied x first, then y, then t.
pub fn total_derivative_multi(e: &Expr, j: JetIndex) -> Expr {
    let mut r = e.clone();
    for d in j.letters() {
        if r.is_zero() {
            break;
        }
        r = total_derivative(&r, d);
    }
    r
}

/// Partial derivative in one jet-space coordinate, all other coordinates held fixed.
pub fn partial_derivative(e: &Expr, v: &Atom) -> Expr {
    Deriver::new(&Partial(v)).expr(e)
}

impl Expr {
    pub fn d(&self, d: Indep) -> Expr {
        total_derivative(self, d)
    }

    pub fn partial(&self, v: &Atom) -> Expr {
        partial_derivative(self, v)
    }

    pub fn partial_jet(&self, dep: Dep, j: JetIndex) -> Expr {
        partial_derivative(self, &Atom::Jet(dep, j))
    }
}
