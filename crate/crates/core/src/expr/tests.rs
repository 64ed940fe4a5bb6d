use alloc::string::ToString;
use alloc::vec;

use super::*;
use crate::parse::{parse_expr, ParseContext};

fn p(s: &str) -> Expr {
    parse_expr(s, &ParseContext::default()).unwrap()
}

#[test]
fn ring_identities() {
    let a = p("x + 2*u_x - alpha");
    let b = p("y*u - 3");
    assert_eq!(&(&a + &b) - &b, a);
    assert_eq!(&a * &b, &b * &a);
    assert_eq!((&a - &a), Expr::zero());
    assert_eq!(p("(x+y)^2"), p("x^2 + 2*x*y + y^2"));
}

#[test]
fn surds_fold() {
    assert_eq!(p("2^(1/2)*2^(1/2)"), Expr::int(2));
    assert_eq!(p("8^(1/2)"), p("2*2^(1/2)"));
    assert_eq!(p("(1/2)^(1/2)"), p("1/2*2^(1/2)"));
    assert_eq!(p("(4*alpha)^(1/2)"), p("2*alpha^(1/2)"));
}

#[test]
fn exp_merges() {
    assert_eq!(p("exp(x)*exp(-x)"), Expr::one());
    assert_eq!(p("exp(x)^2"), p("exp(2*x)"));
    assert_eq!(p("exp(alpha*t)*exp(beta*t)"), p("exp((alpha+beta)*t)"));
}

#[test]
fn trig_sign_normalization() {
    assert_eq!(p("sin(-x)"), p("-sin(x)"));
    assert_eq!(p("cos(-x)"), p("cos(x)"));
}

#[test]
fn radicals() {
    let r = p("(x+y)^(-1)");
    assert_eq!(&r * &p("(x+y)^(-1)"), p("(x+y)^(-2)"));
    assert_eq!(p("(x+y)^(1/2)*(x+y)^(1/2)"), p("x+y"));
    assert_eq!(p("(2*x+2*y)^(-1)"), p("1/2*(x+y)^(-1)"));
}

#[test]
fn total_derivative_chain() {
    let e = p("f(u)*u_x + x*exp(u)");
    let d = e.d(Indep::X);
    assert_eq!(d, p("f'(u)*u_x^2 + f(u)*u_xx + exp(u) + x*u_x*exp(u)"));
    let xi = p("xi1");
    assert_eq!(xi.d(Indep::Y), p("xi1_y + xi1_u*u_y"));
}

#[test]
fn antiderivative_node() {
    let e = p("Int(g(u),u)");
    assert_eq!(e.partial(&Atom::u()), p("g(u)"));
    assert_eq!(p("diff(g(u),u,2)"), p("g''(u)"));
}

#[test]
fn function_substitution_derivatives() {
    let e = p("f'(u) + g''(u)*u_x");
    let out = e
        .subs_all(vec![
            Rule::Function { name: "f".into(), params: vec![Atom::u()], body: p("alpha*u^2") },
            Rule::Function { name: "g".into(), params: vec![Atom::u()], body: p("u^3") },
        ])
        .unwrap();
    assert_eq!(out, p("2*alpha*u + 6*u*u_x"));
    let i = p("Int(f(u),u)")
        .subs_all(vec![Rule::Function { name: "f".into(), params: vec![Atom::u()], body: p("3*u^2 + 1") }])
        .unwrap();
    assert_eq!(i, p("u^3 + u"));
}

#[test]
fn dependent_substitution() {
    let e = p("v_xx + v");
    let out = e.subs_all(vec![Rule::Dependent { dep: Dep::V, value: p("phi(x,y,t,u)") }]).unwrap();
    assert_eq!(out, p("phi + phi_xx + 2*phi_xu*u_x + phi_uu*u_x^2 + phi_u*u_xx"));
}

#[test]
fn print_round_trip_samples() {
    for s in [
        "x^2*u_xxy - 3/2*alpha*f'(u)",
        "exp(-alpha*t)*cos(2*alpha^(1/2)*x) + 2^(1/2)*sin(y)",
        "(x + y)^(-1) + Int(g(u),u) - xi3_xu(x,y,t,u)",
        "F1_xt(x,y,t)*v_yy",
    ] {
        let e = p(s);
        assert_eq!(p(&e.to_string()), e, "{s} -> {e}");
    }
}

#[test]
fn collect_jets() {
    let e = p("alpha*u_x^2 + beta*u_x^2 + gamma*u_xx + 5 + f(u)");
    let c = collect_jet_coefficients(&e, 1).unwrap();
    assert_eq!(c.entries.len(), 3);
    assert_eq!(c.coefficient(&p("u_x^2").terms()[0].mono).unwrap(), &p("alpha+beta"));
}
