//! Conserved vectors from the weighted Noether operator, divergence checks and triviality.
//!
//! For a generator with characteristic `W` and Lagrangian `L`,
//!
//! ```text
//! C^i = xi^i L + sum_J D^J(W) * sum_M  m(J) m(M) / m(i+J+M) * (-1)^|M| D^M dL/du_{i+J+M}
//! ```
//!
//! where `m(K) = |K|! / (k_x! k_y! k_t!)` counts the orderings of a multi-index.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::adjoint::{euler_lagrange, jets_of};
use crate::constraint::ConstraintSet;
use crate::error::{Error, Result};
use crate::expr::{pythagorean_reduce, total_derivative_multi, Atom, Dep, Expr, Indep, JetIndex, Q};
use crate::limits;
use crate::numcheck::ZeroClaim;
use crate::pde::{Family, Reducer};
use crate::symmetry::Generator;

/// Components `(C^x, C^y, C^t)` and the constraints on auxiliary functions they assume.
#[derive(Clone, Debug, Default)]
pub struct ConservedVector {
    pub c: [Expr; 3],
    pub constraints: ConstraintSet,
}

impl ConservedVector {
    pub fn new(c: [Expr; 3], constraints: ConstraintSet) -> ConservedVector {
        ConservedVector { c, constraints }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Expr::is_zero)
    }

    pub fn density(&self) -> &Expr {
        &self.c[Indep::T.index()]
    }
}

fn sub_indices(r: JetIndex) -> impl Iterator<Item = JetIndex> {
    (0..=r.ix).flat_map(move |a| (0..=r.iy).flat_map(move |b| (0..=r.it).map(move |c| JetIndex::new(a, b, c))))
}

fn ratio(j: JetIndex, m: JetIndex, k: JetIndex) -> Q {
    let n = BigInt::from(j.multiplicity()) * BigInt::from(m.multiplicity());
    Q::new(n, BigInt::from(k.multiplicity()))
}

/// The weighted variational derivative paired with `D^J W` in the `i`-th component.
pub fn weighted_euler_lagrange(l: &Expr, i: Indep, j: JetIndex) -> Expr {
    let base = j.shifted(i);
    let mut acc = Expr::zero();
    for k in jets_of(l, Dep::U) {
        let Some(m) = k.minus(base) else { continue };
        let p = l.partial_jet(Dep::U, k);
        if p.is_zero() {
            continue;
        }
        let mut w = ratio(j, m, k);
        if m.order() % 2 == 1 {
            w = -w;
        }
        acc = &acc + &total_derivative_multi(&p, m).scale(&w);
    }
    acc
}

/// `C^i` without any reduction; satisfies the Noether identity off solutions.
pub fn noether_vector(gen: &Generator, l: &Expr) -> [Expr; 3] {
    let w = gen.characteristic();
    let jets = jets_of(l, Dep::U);
    let mut dw: BTreeMap<JetIndex, Expr> = BTreeMap::new();
    Indep::ALL.map(|i| {
        let mut js: Vec<JetIndex> = Vec::new();
        for k in &jets {
            if let Some(r) = k.lowered(i) {
                for j in sub_indices(r) {
                    if !js.contains(&j) {
                        js.push(j);
                    }
                }
            }
        }
        let mut acc = &gen.xi[i.index()] * l;
        for j in js {
            let e = weighted_euler_lagrange(l, i, j);
            if e.is_zero() {
                continue;
            }
            let d = dw.entry(j).or_insert_with(|| total_derivative_multi(&w, j)).clone();
            acc = &acc + &(&d * &e);
        }
        acc
    })
}

/// The vector for `L = phi * Delta`, reduced on solutions and rewritten by `constraints`.
pub fn conserved_vector(
    gen: &Generator,
    family: &Family,
    phi: &Expr,
    constraints: &ConstraintSet,
) -> Result<ConservedVector> {
    if phi.is_zero() {
        return Err(Error::Domain("the multiplier phi must be nonzero".into()));
    }
    let l = phi * &family.equation();
    let raw = noether_vector(gen, &l);
    reduce_vector(&raw, family, constraints)
}

/// Reduce each component on solutions and apply `constraints`.
pub fn reduce_vector(c: &[Expr; 3], family: &Family, constraints: &ConstraintSet) -> Result<ConservedVector> {
    let red = Reducer::new(family);
    let mut out: [Expr; 3] = Default::default();
    for (o, e) in out.iter_mut().zip(c) {
        *o = constraints.apply(&red.reduce(e)?)?;
        limits::check(o)?;
    }
    Ok(ConservedVector { c: out, constraints: constraints.clone() })
}

#[derive(Clone, Debug)]
pub struct Divergence {
    pub residual: Expr,
    pub claim: ZeroClaim,
}

impl Divergence {
    pub fn is_zero(&self) -> bool {
        self.residual.is_zero()
    }
}

/// `D_x C^x + D_y C^y + D_t C^t` on solutions, after constraint rewriting and the
/// Pythagorean post-pass.
pub fn divergence(cv: &ConservedVector, family: &Family) -> Result<Divergence> {
    let red = Reducer::new(family);
    let mut pieces = Vec::new();
    for d in Indep::ALL {
        let e = cv.constraints.apply(&red.reduce(&cv.c[d.index()])?)?;
        let de = cv.constraints.apply(&red.reduce(&e.d(d))?)?;
        limits::check(&de)?;
        pieces.push(de);
    }
    let residual = pythagorean_reduce(&Expr::sum(&pieces));
    Ok(Divergence { residual, claim: ZeroClaim::new(pieces) })
}

/// Divergence with no reduction at all.
pub fn raw_divergence(c: &[Expr; 3]) -> Expr {
    Expr::sum(&Indep::ALL.map(|d| c[d.index()].d(d)))
}

#[derive(Clone, Debug)]
pub struct Triviality {
    /// `E_u` of the density on solutions. Zero iff the density is a spatial divergence
    /// plus a function of `(x, y, t)` alone, so the law carries no information.
    pub characteristic: Expr,
    /// Every component vanishes on solutions and the raw divergence is identically zero.
    pub vanishes: bool,
}

impl Triviality {
    pub fn is_trivial(&self) -> bool {
        self.characteristic.is_zero()
    }
}

/// The variational derivative of the reduced density.
pub fn density_characteristic(cv: &ConservedVector, family: &Family) -> Result<Expr> {
    let red = Reducer::new(family);
    let p = cv.constraints.apply(&red.reduce(cv.density())?)?;
    let q = euler_lagrange(&p, Dep::U);
    let q = cv.constraints.apply(&red.reduce(&q)?)?;
    Ok(pythagorean_reduce(&q))
}

pub fn triviality(cv: &ConservedVector, family: &Family) -> Result<Triviality> {
    let characteristic = density_characteristic(cv, family)?;
    let red = Reducer::new(family);
    let mut vanishes = raw_divergence(&cv.c).is_zero();
    for c in &cv.c {
        vanishes = vanishes && pythagorean_reduce(&cv.constraints.apply(&red.reduce(c)?)?).is_zero();
    }
    Ok(Triviality { characteristic, vanishes })
}

pub fn is_trivial(cv: &ConservedVector, family: &Family) -> Result<bool> {
    Ok(triviality(cv, family)?.is_trivial())
}

/// `k` with `a = k * b`, where `k` is free of coordinates, jets and functions.
pub fn proportionality(a: &Expr, b: &Expr) -> Result<Option<Expr>> {
    let (Some(ta), Some(tb)) = (a.terms().first(), b.terms().first()) else { return Ok(None) };
    let k = Expr::from_terms(alloc::vec![ta.clone()]).div(&Expr::from_terms(alloc::vec![tb.clone()]))?;
    if k.any_atom(&|x| !matches!(x, Atom::Param(_) | Atom::Surd(_))) {
        return Ok(None);
    }
    Ok((a - &(&k * b)).is_zero().then_some(k))
}
