//! Canonical expressions.
//!
//! An [`Expr`] is a sorted list of terms `coeff * monomial` with nonzero rational
//! coefficients; a monomial is a sorted list of `(atom, exponent)` pairs with nonzero
//! rational exponents. Every constructor and operation returns this normal form, so two
//! expressions are equal exactly when their term lists are.
//!
//! Rational functions are canonical only for monomial denominators; a multi-term
//! denominator is a [`Atom::Radical`] with a negative exponent and is not cancelled
//! against polynomial numerators.

mod atom;
mod collect;
mod diff;
mod print;
pub(crate) mod rational;
mod subst;
mod tree;
mod trig;

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use hashbrown::HashMap;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

pub use atom::{Atom, Dep, FuncApp, Indep, JetIndex, Symbol};
pub use collect::{collect_coefficients, collect_jet_coefficients, JetCollection};
pub use diff::{partial_derivative, total_derivative, total_derivative_multi, Derivation};
pub use subst::{integrate, Rule, Substitution, Warning};
pub use tree::Node;
pub use trig::pythagorean_reduce;

use crate::error::{Error, Result};
use rational::{fold_surd, q_int, q_pow};

pub type Q = num_rational::BigRational;
pub type Exponent = Ratio<i64>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) SmallVec<[(Atom, Exponent); 4]>);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub mono: Monomial,
    pub coeff: Q,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Expr(Arc<[Term]>);

impl core::fmt::Debug for Expr {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Expr({self})")
    }
}

pub(crate) fn ex(n: i64) -> Exponent {
    Exponent::from_integer(n)
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn factors(&self) -> &[(Atom, Exponent)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent_of(&self, a: &Atom) -> Exponent {
        self.0
            .binary_search_by(|(b, _)| b.cmp(a))
            .map(|i| self.0[i].1)
            .unwrap_or_else(|_| Exponent::zero())
    }

    /// Build from arbitrary factors; returns the folded coefficient and any factor that had
    /// to be expanded back into a sum.
    pub(crate) fn normalize(mut raw: SmallVec<[(Atom, Exponent); 4]>) -> Normal {
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: SmallVec<[(Atom, Exponent); 4]> = SmallVec::new();
        for (a, e) in raw {
            match merged.last_mut() {
                Some((b, f)) if *b == a => *f += e,
                _ => merged.push((a, e)),
            }
        }
        merged.retain(|(_, e)| !e.is_zero());
        Monomial(merged).finish()
    }

    fn needs_finish(&self) -> bool {
        let mut exps = 0;
        for (a, e) in &self.0 {
            match a {
                Atom::Surd(_) if *e < Exponent::zero() || *e >= Exponent::one() => return true,
                Atom::Radical(_) if *e >= Exponent::one() => return true,
                Atom::Exp(_) => {
                    exps += 1;
                    if exps > 1 || !e.is_one() {
                        return true;
                    }
                }
                _ => {}
            }
        }
        false
    }

    fn finish(self) -> Normal {
        if !self.needs_finish() {
            return Normal { coeff: Q::one(), mono: self, extra: None };
        }
        let mut coeff = Q::one();
        let mut extra: Option<Expr> = None;
        let mut exp_arg = Expr::zero();
        let mut had_exp = false;
        let mut out: SmallVec<[(Atom, Exponent); 4]> = SmallVec::new();
        for (a, e) in self.0 {
            match a {
                Atom::Surd(p) => {
                    let (c, f) = fold_surd(p, e);
                    coeff *= c;
                    if !f.is_zero() {
                        out.push((Atom::Surd(p), f));
                    }
                }
                Atom::Radical(base) if e >= Exponent::one() => {
                    let k = e.floor().to_integer();
                    let expanded = base.pow_int(k as u32);
                    extra = Some(match extra {
                        Some(x) => &x * &expanded,
                        None => expanded,
                    });
                    let f = e - ex(k);
                    if !f.is_zero() {
                        out.push((Atom::Radical(base), f));
                    }
                }
                Atom::Exp(arg) => {
                    had_exp = true;
                    exp_arg = &exp_arg + &arg.scale(&Q::new((*e.numer()).into(), (*e.denom()).into()));
                }
                other => out.push((other, e)),
            }
        }
        if had_exp && !exp_arg.is_zero() {
            let atom = Atom::Exp(exp_arg);
            let pos = out.partition_point(|(b, _)| *b < atom);
            out.insert(pos, (atom, Exponent::one()));
        }
        Normal { coeff, mono: Monomial(out), extra }
    }

    pub(crate) fn mul(&self, other: &Monomial) -> Normal {
        if self.0.is_empty() {
            return Normal { coeff: Q::one(), mono: other.clone(), extra: None };
        }
        if other.0.is_empty() {
            return Normal { coeff: Q::one(), mono: self.clone(), extra: None };
        }
        let (a, b) = (&self.0, &other.0);
        let mut out: SmallVec<[(Atom, Exponent); 4]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                core::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if !e.is_zero() {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().cloned());
        Monomial(out).finish()
    }

    /// Same monomial with the exponent of factor `i` lowered by one.
    pub(crate) fn lower_at(&self, i: usize) -> Monomial {
        let mut m = self.0.clone();
        m[i].1 -= Exponent::one();
        if m[i].1.is_zero() {
            m.remove(i);
        }
        Monomial(m)
    }

    pub fn degree_in(&self, pred: impl Fn(&Atom) -> bool) -> Exponent {
        self.0.iter().filter(|(a, _)| pred(a)).map(|(_, e)| *e).sum()
    }

    /// Split into the factors satisfying `pred` and the rest.
    pub fn split(&self, pred: impl Fn(&Atom) -> bool) -> (Monomial, Monomial) {
        let (mut yes, mut no) = (SmallVec::new(), SmallVec::new());
        for f in &self.0 {
            if pred(&f.0) {
                yes.push(f.clone());
            } else {
                no.push(f.clone());
            }
        }
        (Monomial(yes), Monomial(no))
    }

    pub fn to_expr(&self) -> Expr {
        Expr::from_terms(alloc::vec![Term { mono: self.clone(), coeff: Q::one() }])
    }

    /// Monomial dividing both, taking the minimum exponent of each shared factor.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        for (a, e) in &self.0 {
            let f = other.exponent_of(a);
            let m = if *e < f { *e } else { f };
            if !f.is_zero() && m > Exponent::zero() {
                out.push((a.clone(), m));
            }
        }
        Monomial(out)
    }
}

pub(crate) struct Normal {
    pub coeff: Q,
    pub mono: Monomial,
    pub extra: Option<Expr>,
}

/// Accumulator of terms keyed by monomial.
#[derive(Default)]
pub struct TermMap(HashMap<Monomial, Q>);

impl TermMap {
    pub fn new() -> TermMap {
        TermMap(HashMap::new())
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        match self.0.entry(mono) {
            hashbrown::hash_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            hashbrown::hash_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub(crate) fn add_normal(&mut self, n: Normal, coeff: Q) {
        let c = coeff * n.coeff;
        match n.extra {
            None => self.add_term(n.mono, c),
            Some(x) => {
                for t in x.terms() {
                    let m = t.mono.mul(&n.mono);
                    self.add_normal(m, &c * &t.coeff);
                }
            }
        }
    }

    pub fn add_expr(&mut self, e: &Expr) {
        for t in e.terms() {
            self.add_term(t.mono.clone(), t.coeff.clone());
        }
    }

    pub fn add_scaled(&mut self, e: &Expr, c: &Q) {
        for t in e.terms() {
            self.add_term(t.mono.clone(), &t.coeff * c);
        }
    }

    /// Add `e * coeff * mono`.
    pub fn add_product(&mut self, e: &Expr, coeff: &Q, mono: &Monomial) {
        for t in e.terms() {
            let n = t.mono.mul(mono);
            self.add_normal(n, &t.coeff * coeff);
        }
    }

    pub fn finish(self) -> Expr {
        let mut v: Vec<Term> = self.0.into_iter().map(|(mono, coeff)| Term { mono, coeff }).collect();
        v.sort_unstable_by(|a, b| a.mono.cmp(&b.mono));
        Expr(v.into())
    }
}

impl Expr {
    pub fn zero() -> Expr {
        Expr(Arc::from(Vec::new()))
    }

    pub fn one() -> Expr {
        Expr::constant(Q::one())
    }

    pub fn int(n: i64) -> Expr {
        Expr::constant(q_int(n))
    }

    pub fn rational(n: i64, d: i64) -> Expr {
        Expr::constant(Q::new(n.into(), d.into()))
    }

    pub fn constant(c: Q) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr(Arc::from(alloc::vec![Term { mono: Monomial::one(), coeff: c }]))
    }

    /// Terms must already be sorted by monomial, distinct and nonzero.
    pub(crate) fn from_terms(v: Vec<Term>) -> Expr {
        Expr(v.into())
    }

    pub fn from_atom(a: Atom) -> Expr {
        let mut m = SmallVec::new();
        m.push((a, Exponent::one()));
        let n = Monomial::normalize(m);
        let mut tm = TermMap::new();
        tm.add_normal(n, Q::one());
        tm.finish()
    }

    pub fn param(name: &str) -> Expr {
        Expr::from_atom(Atom::param(name))
    }

    pub fn indep(d: Indep) -> Expr {
        Expr::from_atom(Atom::Indep(d))
    }

    pub fn jet(dep: Dep, j: JetIndex) -> Expr {
        Expr::from_atom(Atom::Jet(dep, j))
    }

    pub fn u() -> Expr {
        Expr::jet(Dep::U, JetIndex::ZERO)
    }

    pub fn v() -> Expr {
        Expr::jet(Dep::V, JetIndex::ZERO)
    }

    pub fn func(name: &str, args: Vec<Expr>) -> Expr {
        Expr::from_atom(Atom::Func(Arc::new(FuncApp::new(Symbol::from(name), args))))
    }

    pub fn func_app(app: FuncApp) -> Expr {
        Expr::from_atom(Atom::Func(Arc::new(app)))
    }

    pub fn exp(arg: Expr) -> Expr {
        if arg.is_zero() {
            return Expr::one();
        }
        Expr::from_atom(Atom::Exp(arg))
    }

    pub fn sin(arg: Expr) -> Expr {
        if arg.is_zero() {
            return Expr::zero();
        }
        if arg.leading_coeff().is_negative() {
            return -Expr::from_atom(Atom::Sin(-arg));
        }
        Expr::from_atom(Atom::Sin(arg))
    }

    pub fn cos(arg: Expr) -> Expr {
        if arg.is_zero() {
            return Expr::one();
        }
        if arg.leading_coeff().is_negative() {
            return Expr::from_atom(Atom::Cos(-arg));
        }
        Expr::from_atom(Atom::Cos(arg))
    }

    pub fn sqrt(&self) -> Result<Expr> {
        self.pow(Exponent::new(1, 2))
    }

    pub fn terms(&self) -> &[Term] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<Q> {
        match &*self.0 {
            [] => Some(Q::zero()),
            [t] if t.mono.is_one() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    /// The atom when the expression is exactly one atom to the first power.
    pub fn as_atom(&self) -> Option<&Atom> {
        match &*self.0 {
            [t] if t.coeff.is_one() && t.mono.0.len() == 1 && t.mono.0[0].1.is_one() => Some(&t.mono.0[0].0),
            _ => None,
        }
    }

    pub fn coeff_of(&self, m: &Monomial) -> Q {
        self.0
            .binary_search_by(|t| t.mono.cmp(m))
            .map(|i| self.0[i].coeff.clone())
            .unwrap_or_else(|_| Q::zero())
    }

    pub fn leading_coeff(&self) -> Q {
        self.0.first().map(|t| t.coeff.clone()).unwrap_or_else(Q::zero)
    }

    /// Scaled so the leading coefficient is 1.
    pub fn monic(&self) -> Expr {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.leading_coeff();
        if c.is_one() {
            return self.clone();
        }
        self.scale(&c.recip())
    }

    pub fn scale(&self, c: &Q) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Expr(self.0.iter().map(|t| Term { mono: t.mono.clone(), coeff: &t.coeff * c }).collect())
    }

    pub fn node_count(&self) -> usize {
        self.0
            .iter()
            .map(|t| 1 + t.mono.0.iter().map(|(a, _)| 1 + a.children().iter().map(Expr::node_count).sum::<usize>()).sum::<usize>())
            .sum()
    }

    /// Visit every atom, including those nested in function arguments and exponentials.
    pub fn for_each_atom(&self, f: &mut impl FnMut(&Atom)) {
        for t in self.terms() {
            for (a, _) in t.mono.factors() {
                f(a);
                for c in a.children() {
                    c.for_each_atom(f);
                }
            }
        }
    }

    pub fn any_atom(&self, pred: &impl Fn(&Atom) -> bool) -> bool {
        self.terms().iter().any(|t| {
            t.mono
                .factors()
                .iter()
                .any(|(a, _)| pred(a) || a.children().iter().any(|c| c.any_atom(pred)))
        })
    }

    pub fn contains_atom(&self, a: &Atom) -> bool {
        self.any_atom(&|b| b == a)
    }

    pub fn add(&self, o: &Expr) -> Expr {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].mono.cmp(&b[j].mono) {
                core::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let c = &a[i].coeff + &b[j].coeff;
                    if !c.is_zero() {
                        out.push(Term { mono: a[i].mono.clone(), coeff: c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().cloned());
        Expr(out.into())
    }

    pub fn mul(&self, o: &Expr) -> Expr {
        if self.is_zero() || o.is_zero() {
            return Expr::zero();
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        let mut tm = TermMap::new();
        for a in self.terms() {
            for b in o.terms() {
                let n = a.mono.mul(&b.mono);
                tm.add_normal(n, &a.coeff * &b.coeff);
            }
        }
        tm.finish()
    }

    pub fn pow_int(&self, mut k: u32) -> Expr {
        let mut base = self.clone();
        let mut acc = Expr::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow(&self, q: Exponent) -> Result<Expr> {
        if q.is_zero() {
            return Ok(Expr::one());
        }
        if self.is_zero() {
            return if q > Exponent::zero() { Ok(Expr::zero()) } else { Err(Error::DivisionByZero) };
        }
        if q.is_integer() && q > Exponent::zero() {
            return Ok(self.pow_int(q.to_integer() as u32));
        }
        if let [t] = &*self.0 {
            let (c, surds) = q_pow(&t.coeff, q)?;
            let mut raw: SmallVec<[(Atom, Exponent); 4]> = t.mono.0.iter().map(|(a, e)| (a.clone(), *e * q)).collect();
            raw.extend(surds.into_iter().map(|(p, e)| (Atom::Surd(p), e)));
            let mut tm = TermMap::new();
            tm.add_normal(Monomial::normalize(raw), c);
            return Ok(tm.finish());
        }
        let lc = self.leading_coeff();
        let base = self.scale(&lc.recip());
        let (c, surds) = q_pow(&lc, q)?;
        let mut raw: SmallVec<[(Atom, Exponent); 4]> = SmallVec::new();
        raw.push((Atom::Radical(base), q));
        raw.extend(surds.into_iter().map(|(p, e)| (Atom::Surd(p), e)));
        let mut tm = TermMap::new();
        tm.add_normal(Monomial::normalize(raw), c);
        Ok(tm.finish())
    }

    pub fn recip(&self) -> Result<Expr> {
        self.pow(ex(-1))
    }

    pub fn div(&self, o: &Expr) -> Result<Expr> {
        if let Some(c) = o.as_constant() {
            if c.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(self.scale(&c.recip()));
        }
        Ok(self * &o.recip()?)
    }

    pub fn sum<'a>(it: impl IntoIterator<Item = &'a Expr>) -> Expr {
        let mut tm = TermMap::new();
        for e in it {
            tm.add_expr(e);
        }
        tm.finish()
    }

    /// Split as `coeff * self_primitive` where the primitive part has leading coefficient 1.
    pub fn content_split(&self) -> (Q, Expr) {
        let c = self.leading_coeff();
        if c.is_zero() {
            return (Q::one(), Expr::zero());
        }
        (c.clone(), self.scale(&c.recip()))
    }

    /// Largest monomial dividing every term (positive exponents only).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms().iter();
        let Some(first) = it.next() else { return Monomial::one() };
        let mut g = Monomial(first.mono.0.iter().filter(|(_, e)| *e > Exponent::zero()).cloned().collect());
        for t in it {
            g = g.gcd(&t.mono);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out `m`, which must divide every term.
    pub fn div_monomial(&self, m: &Monomial) -> Expr {
        let inv = Monomial(m.0.iter().map(|(a, e)| (a.clone(), -*e)).collect());
        let mut tm = TermMap::new();
        for t in self.terms() {
            tm.add_normal(t.mono.mul(&inv), t.coeff.clone());
        }
        tm.finish()
    }
}

impl<'a> Add<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn add(self, o: &Expr) -> Expr {
        Expr::add(self, o)
    }
}

impl<'a> Sub<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn sub(self, o: &Expr) -> Expr {
        Expr::add(self, &-o)
    }
}

impl<'a> Mul<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn mul(self, o: &Expr) -> Expr {
        Expr::mul(self, o)
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, o: Expr) -> Expr {
        Expr::add(&self, &o)
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, o: Expr) -> Expr {
        &self - &o
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, o: Expr) -> Expr {
        Expr::mul(&self, &o)
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr(self.0.iter().map(|t| Term { mono: t.mono.clone(), coeff: -&t.coeff }).collect())
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Expr {
        Expr::int(n)
    }
}

#[cfg(test)]
mod tests;
