#![allow(dead_code)]

use gks_core::adjoint::{euler_lagrange, jets_of};
use gks_core::conservation::{noether_vector, raw_divergence};
use gks_core::expr::{JetIndex, Q};
use gks_core::symmetry::{Generator, Prolongation};
use gks_core::{Dep, Expr, Indep};
use proptest::prelude::*;

fn jet(ix: u16, iy: u16, it: u16) -> Expr {
    Expr::jet(Dep::U, JetIndex::new(ix, iy, it))
}

/// Atoms of jet order at most `order`, with t-derivatives only when `with_t`.
pub fn atom(order: u16, with_t: bool) -> BoxedStrategy<Expr> {
    let tmax = if with_t { order } else { 0 };
    let j = (0..=order, 0..=order, 0..=tmax)
        .prop_filter("order", move |(a, b, c)| a + b + c <= order)
        .prop_map(|(a, b, c)| jet(a, b, c));
    prop_oneof![
        3 => j,
        1 => Just(Expr::indep(Indep::X)),
        1 => Just(Expr::indep(Indep::Y)),
        1 => Just(Expr::indep(Indep::T)),
        1 => Just(Expr::param("alpha")),
        1 => Just(Expr::func("g", vec![Expr::u()])),
        1 => Just(Expr::sin(Expr::indep(Indep::X))),
        1 => Just(Expr::exp(Expr::indep(Indep::Y))),
    ]
    .boxed()
}

fn monomial(order: u16, with_t: bool) -> impl Strategy<Value = Expr> {
    (-3i64..=3, prop::collection::vec(atom(order, with_t), 0..=3)).prop_map(|(c, fs)| {
        let c = if c == 0 { 1 } else { c };
        fs.iter().fold(Expr::int(c), |acc, f| &acc * f)
    })
}

/// Sums of a few monomials.
pub fn poly(order: u16, with_t: bool, terms: usize) -> impl Strategy<Value = Expr> {
    prop::collection::vec(monomial(order, with_t), 1..=terms).prop_map(|v| Expr::sum(&v))
}

/// Point generators with polynomial-ish coefficients in `(x, y, t, u)`.
pub fn generator() -> impl Strategy<Value = Generator> {
    (poly(0, false, 2), poly(0, false, 2), poly(0, false, 2), poly(0, false, 2))
        .prop_map(|(a, b, c, e)| Generator { xi: [a, b, c], eta: e })
}

fn rich_atom() -> BoxedStrategy<Expr> {
    let xyt = || vec![Expr::indep(Indep::X), Expr::indep(Indep::Y), Expr::indep(Indep::T)];
    prop_oneof![
        4 => atom(4, true),
        1 => (0u16..=2, 0u16..=2).prop_map(|(a, b)| Expr::jet(Dep::V, JetIndex::new(a, b, 0))),
        1 => prop::sample::select(vec!["beta", "gamma", "delta", "c", "c1", "c4", "epsilon"]).prop_map(Expr::param),
        1 => Just(Expr::func("F1", xyt())),
        1 => Just(Expr::func("r", vec![Expr::u()]).d(Indep::X)),
        1 => Just(Expr::func("f", vec![Expr::u()]).d(Indep::Y).d(Indep::Y)),
        1 => Just(Expr::func("F1", xyt()).d(Indep::T).d(Indep::X)),
        1 => Just(Expr::param("alpha").sqrt().unwrap()),
        1 => Just(Expr::int(2).sqrt().unwrap()),
        1 => poly(1, false, 2).prop_map(Expr::cos),
        1 => poly(1, false, 2).prop_map(Expr::exp),
        1 => Just((&Expr::indep(Indep::X) + &Expr::indep(Indep::Y)).pow_int(1).recip().unwrap()),
    ]
    .boxed()
}

/// Broader expressions for parser round trips: rational coefficients, surds, nested
/// kernels, derivatives of arbitrary functions and the nonlocal variable.
pub fn rich() -> impl Strategy<Value = Expr> {
    let mono = ((-7i64..=7), (1i64..=5), prop::collection::vec(rich_atom(), 0..=3)).prop_map(|(n, d, fs)| {
        let n = if n == 0 { 1 } else { n };
        fs.iter().fold(Expr::rational(n, d), |acc, f| &acc * f)
    });
    prop::collection::vec(mono, 1..=4).prop_map(|v| Expr::sum(&v))
}

fn jet_of_word(word: &[Indep]) -> JetIndex {
    word.iter().fold(JetIndex::ZERO, |j, d| j.shifted(*d))
}

fn words(n: usize) -> Vec<Vec<Indep>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| Indep::ALL.map(|d| [w.clone(), vec![d]].concat()))
            .collect();
    }
    out
}

/// Textbook expansion over ordered index tuples, with `d/du_{ij...}` taken as the
/// symmetric derivative divided by the number of orderings.
pub fn classical_vector(gen: &Generator, l: &Expr, order: usize) -> [Expr; 3] {
    let w = gen.characteristic();
    Indep::ALL.map(|i| {
        let mut acc = &gen.xi[i.index()] * l;
        for s in 0..order {
            for m in 0..order - s {
                for js in words(s) {
                    for ks in words(m) {
                        let mut full = vec![i];
                        full.extend(&js);
                        full.extend(&ks);
                        let k = jet_of_word(&full);
                        let dl = l.partial_jet(Dep::U, k);
                        if dl.is_zero() {
                            continue;
                        }
                        let mut inner = dl.scale(&Q::new(1.into(), k.multiplicity().into()));
                        for d in &ks {
                            inner = inner.d(*d);
                        }
                        if m % 2 == 1 {
                            inner = -inner;
                        }
                        let mut dw = w.clone();
                        for d in &js {
                            dw = dw.d(*d);
                        }
                        acc = &acc + &(&dw * &inner);
                    }
                }
            }
        }
        acc
    })
}

fn prolonged_action(gen: &Generator, l: &Expr) -> Expr {
    let pr = Prolongation::new(gen);
    let mut acc = Expr::zero();
    for d in Indep::ALL {
        acc = &acc + &(&gen.xi[d.index()] * &l.partial(&gks_core::Atom::Indep(d)));
    }
    for k in jets_of(l, Dep::U) {
        acc = &acc + &(&pr.eta(k) * &l.partial_jet(Dep::U, k));
    }
    acc
}

/// `X(L) + L div(xi) - W E(L) - Div C`, zero for every generator and Lagrangian.
pub fn noether_defect(gen: &Generator, l: &Expr) -> Expr {
    let c = noether_vector(gen, l);
    let div_xi = Expr::sum(&Indep::ALL.map(|d| gen.xi[d.index()].d(d)));
    let lhs = &prolonged_action(gen, l) + &(l * &div_xi);
    let rhs = &(&gen.characteristic() * &euler_lagrange(l, Dep::U)) + &raw_divergence(&c);
    &lhs - &rhs
}

