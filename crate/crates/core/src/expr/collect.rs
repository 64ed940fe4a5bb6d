use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{Atom, Expr, Monomial, TermMap};
use crate::error::{Error, Result};

/// Coefficients of the distinct products of jets of order at least `min_order`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct JetCollection {
    pub entries: Vec<(Monomial, Expr)>,
}

impl JetCollection {
    pub fn coefficient(&self, m: &Monomial) -> Option<&Expr> {
        self.entries.iter().find(|(k, _)| k == m).map(|(_, e)| e)
    }
}

/// Group terms by the product of factors matching `pred`.
///
/// Fails when a matching atom hides inside a function argument or carries a
/// non-natural exponent, since the grouping would then not be polynomial.
pub fn collect_coefficients(e: &Expr, pred: impl Fn(&Atom) -> bool) -> Result<BTreeMap<Monomial, Expr>> {
    let mut groups: BTreeMap<Monomial, TermMap> = BTreeMap::new();
    for t in e.terms() {
        for (a, x) in t.mono.factors() {
            if pred(a) && !(x.is_integer() && *x > 0.into()) {
                return Err(Error::Structural(format!("{a:?} appears with exponent {x}")));
            }
            if !pred(a) && a.children().iter().any(|c| c.any_atom(&pred)) {
                return Err(Error::Structural(format!("collected coordinate nested inside {a:?}")));
            }
        }
        let (key, rest) = t.mono.split(&pred);
        groups.entry(key).or_default().add_term(rest, t.coeff.clone());
    }
    Ok(groups
        .into_iter()
        .map(|(k, tm)| (k, tm.finish()))
        .filter(|(_, e)| !e.is_zero())
        .collect())
}

pub fn collect_jet_coefficients(e: &Expr, min_order: u32) -> Result<JetCollection> {
    let entries = collect_coefficients(e, |a| matches!(a, Atom::Jet(_, j) if j.order() >= min_order))?;
    Ok(JetCollection { entries: entries.into_iter().collect() })
}
