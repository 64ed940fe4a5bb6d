use std::collections::BTreeSet;

use gks_core::numcheck::*;
use gks_core::parse::{parse_expr, ParseContext};
use gks_core::{Atom, Expr};

fn p(s: &str) -> Expr {
    parse_expr(s, &ParseContext::default()).unwrap()
}

#[test]
fn exact_zero_passes() {
    let claim = ZeroClaim::new(vec![p("(x + f(u))^3"), -p("x^3 + 3*x^2*f(u) + 3*x*f(u)^2"), -p("f(u)^3")]);
    assert!(claim.exact_sum().is_zero());
    let r = spot_check(&claim, 100, 1e-9, 7, &SampleOptions::default()).unwrap();
    assert!(r.pass && r.evaluated == 100, "{r:?}");
}

#[test]
fn nonzero_claim_fails() {
    let claim = ZeroClaim::new(vec![p("sin(x)^2"), p("cos(x)^2"), Expr::int(-1) * Expr::int(1) + p("u_x")]);
    let r = spot_check(&claim, 100, 1e-9, 7, &SampleOptions::default()).unwrap();
    assert!(!r.pass);
}

#[test]
fn tolerance_is_relative_to_the_largest_term() {
    // The claim is not exactly zero; the numeric check is one-way and can be fooled
    // by a residual below tol times the largest term.
    let small = ZeroClaim::new(vec![p("1000000*x"), p("-1000000*x + x/10000")]);
    assert!(!small.exact_sum().is_zero());
    let r = spot_check(&small, 50, 1e-9, 3, &SampleOptions::default()).unwrap();
    assert!(r.pass && r.max_rel < 1e-9 && r.max_rel > 1e-11, "{r:?}");
    let big = ZeroClaim::new(vec![p("1000000*x"), p("-1000000*x + x/100")]);
    assert!(!spot_check(&big, 50, 1e-9, 3, &SampleOptions::default()).unwrap().pass);
}

#[test]
fn seeded_and_reproducible() {
    let claim = ZeroClaim::new(vec![p("alpha*u_xx*exp(t)"), p("g'(u)*y")]);
    let a = random_assignment(&claim.pieces, 11, &SampleOptions::default());
    let b = random_assignment(&claim.pieces, 11, &SampleOptions::default());
    assert_eq!(a.values, b.values);
    assert_eq!(a.models, b.models);
    let c = random_assignment(&claim.pieces, 12, &SampleOptions::default());
    assert_ne!(a.values, c.values);
}

#[test]
fn positive_parameters_and_truncated_jets() {
    let e = vec![p("alpha^(1/2)*u_xxxxx + beta*u_x")];
    let opts = SampleOptions { positive: BTreeSet::from(["alpha".to_string()]), max_jet_order: Some(4) };
    for seed in 0..100 {
        let a = random_assignment(&e, seed, &opts);
        let alpha = a.values[&Atom::param("alpha")];
        assert!((0.5..=2.0).contains(&alpha));
        assert_eq!(a.eval(&p("u_xxxxx")).unwrap(), 0.0);
        assert!(a.eval(&e[0]).is_ok());
    }
}

#[test]
fn antiderivative_models_are_consistent() {
    let claim = ZeroClaim::new(vec![p("Int(g(u), u)").partial(&Atom::u()), -p("g(u)")]);
    assert!(spot_check(&claim, 100, 1e-12, 1, &SampleOptions::default()).unwrap().pass);
}
