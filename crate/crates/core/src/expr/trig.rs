use smallvec::SmallVec;

use super::{ex, Atom, Expr, Monomial, TermMap};

/// Rewrite every `sin(a)^n`, `n >= 2`, through `sin^2 = 1 - cos^2`.
pub fn pythagorean_reduce(e: &Expr) -> Expr {
    let mut tm = TermMap::new();
    for t in e.terms() {
        let mut keep: SmallVec<[_; 4]> = SmallVec::new();
        let mut factor = Expr::one();
        for (a, x) in t.mono.factors() {
            match a {
                Atom::Sin(arg) if x.is_integer() && x.to_integer() >= 2 => {
                    let n = x.to_integer();
                    if n % 2 == 1 {
                        keep.push((a.clone(), ex(1)));
                    }
                    let c2 = Expr::cos(arg.clone()).pow_int(2);
                    factor = &factor * &(&Expr::one() - &c2).pow_int((n / 2) as u32);
                }
                _ => keep.push((a.clone(), *x)),
            }
        }
        let m = Monomial::normalize(keep);
        let mut inner = TermMap::new();
        inner.add_normal(m, t.coeff.clone());
        let base = inner.finish();
        tm.add_expr(&(&base * &factor));
    }
    tm.finish()
}
