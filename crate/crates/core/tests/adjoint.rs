mod common;

use gks_core::adjoint::*;
use gks_core::constraint::ConstraintSet;
use gks_core::parse::{parse_expr, ParseContext};
use gks_core::pde::Family;
use gks_core::{Atom, Dep, Expr, Indep, JetIndex, Q};
use proptest::prelude::*;

fn p(s: &str) -> Expr {
    parse_expr(s, &ParseContext::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, .. ProptestConfig::default() })]

    #[test]
    fn euler_lagrange_kills_divergences(a in common::poly(3, true, 3), b in common::poly(3, true, 3), c in common::poly(3, true, 3)) {
        let div = &(&a.d(Indep::X) + &b.d(Indep::Y)) + &c.d(Indep::T);
        prop_assert!(euler_lagrange(&div, Dep::U).is_zero());
    }
}

#[test]
fn euler_lagrange_examples() {
    assert_eq!(euler_lagrange(&p("u_x^2/2"), Dep::U), -p("u_xx"));
    assert_eq!(euler_lagrange(&p("v*u_t"), Dep::U), -p("v_t"));
    assert_eq!(euler_lagrange(&p("v*u_xxyy"), Dep::U), p("v_xxyy"));
    assert_eq!(euler_lagrange(&p("v*u*u_x"), Dep::V), p("u*u_x"));
}

#[test]
fn adjoint_with_coefficients_zero() {
    let lin = Family::generic().with("f", Expr::zero()).with("g", Expr::zero()).with("h", Expr::zero()).with("r", Expr::zero());
    assert_eq!(adjoint_equation(&lin), p("-v_t + v_xxxx + 2*v_xxyy + v_yyyy + u_x*v_x + u_xx*v"));
}

#[test]
fn strict_fails_with_witness_two() {
    let s = self_adjointness(&Family::generic(), Mode::Strict).unwrap();
    assert_eq!(strict_witness(&s).unwrap(), Some(Q::from_integer(2.into())));
    assert_eq!(s.jet_coefficient(JetIndex::new(0, 4, 0)).unwrap(), Expr::int(2));
    let zero = Family::generic().with("f", Expr::zero()).with("g", Expr::zero()).with("h", Expr::zero()).with("r", Expr::zero());
    let s0 = self_adjointness(&zero, Mode::Strict).unwrap();
    assert_eq!(strict_witness(&s0).unwrap(), Some(Q::from_integer(2.into())));
}

#[test]
fn quasi_member_is_nonlinearly_self_adjoint_with_constant_phi() {
    let fam = Family::generic().with("f", p("alpha")).with("r", p("u/2 + beta")).with("h", p("g'(u)"));
    let (q, _) = substituted_adjoint(&fam, &p("c"), &ConstraintSet::default()).unwrap();
    assert!(q.is_zero(), "{q}");
    let mut ctx = ParseContext::default();
    ctx.declare_function("phi", vec![Atom::Indep(Indep::X), Atom::Indep(Indep::Y), Atom::Indep(Indep::T), Atom::u()]);
    let n = self_adjointness_with(&fam, &parse_expr("phi", &ctx).unwrap(), Some(Mode::Nonlinear)).unwrap();
    let constant = n
        .residual
        .subs_all([gks_core::expr::Rule::Function {
            name: "phi".into(),
            params: vec![Atom::Indep(Indep::X), Atom::Indep(Indep::Y), Atom::Indep(Indep::T), Atom::u()],
            body: p("c"),
        }])
        .unwrap();
    assert!(constant.is_zero(), "{constant}");
    let bad = fam.clone().with("f", p("alpha*u"));
    assert!(!substituted_adjoint(&bad, &p("c"), &ConstraintSet::default()).unwrap().0.is_zero());
}

#[test]
fn modes_round_trip_by_name() {
    for m in [Mode::Strict, Mode::Quasi, Mode::Nonlinear] {
        assert_eq!(Mode::from_name(m.name()), Some(m));
    }
    assert_eq!(Mode::from_name("weak"), None);
    assert_eq!(Mode::Strict.substitution(), Expr::u());
}

#[test]
fn zero_substitution_rejected() {
    assert!(substituted_adjoint(&Family::generic(), &Expr::zero(), &ConstraintSet::default()).is_err());
}
