//! Exact linear algebra over Q with expressions as sparse vectors indexed by monomials.

use alloc::vec::Vec;

use crate::expr::{Expr, Monomial};

/// Fully reduced echelon basis: no row contains another row's pivot.
#[derive(Clone, Debug, Default)]
pub struct Basis {
    rows: Vec<(Monomial, Expr)>,
}

impl Basis {
    pub fn new() -> Basis {
        Basis::default()
    }

    pub fn from_exprs<'a>(it: impl IntoIterator<Item = &'a Expr>) -> Basis {
        let mut b = Basis::new();
        for e in it {
            b.insert(e);
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, e: &Expr) -> Expr {
        let mut r = e.clone();
        for (p, row) in &self.rows {
            let c = r.coeff_of(p);
            if c != num_traits::Zero::zero() {
                r = &r - &row.scale(&c);
            }
        }
        r
    }

    /// Adds `e` and reports whether it was independent.
    pub fn insert(&mut self, e: &Expr) -> bool {
        let r = self.reduce(e);
        if r.is_zero() {
            return false;
        }
        let r = r.monic();
        let pivot = r.terms()[0].mono.clone();
        for (_, row) in self.rows.iter_mut() {
            let c = row.coeff_of(&pivot);
            if c != num_traits::Zero::zero() {
                *row = &*row - &r.scale(&c);
            }
        }
        self.rows.push((pivot, r));
        true
    }

    pub fn contains(&self, e: &Expr) -> bool {
        self.reduce(e).is_zero()
    }
}
