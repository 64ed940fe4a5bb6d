mod common;

use gks_core::conservation::*;
use gks_core::constraint::ConstraintSet;
use gks_core::expr::{total_derivative_multi, JetIndex, Q};
use gks_core::parse::{parse_expr, ParseContext};
use gks_core::pde::Family;
use gks_core::symmetry::Generator;
use gks_core::{Expr, Indep};
use proptest::prelude::*;

fn p(s: &str) -> Expr {
    parse_expr(s, &ParseContext::default()).unwrap()
}

#[test]
fn mixed_second_derivative_weight() {
    let gen = Generator::parse("eta(x,y,t,u)*d_u", &{
        let mut c = ParseContext::default();
        c.declare_function("eta", vec![gks_core::Atom::Indep(Indep::X), gks_core::Atom::Indep(Indep::Y), gks_core::Atom::Indep(Indep::T), gks_core::Atom::u()]);
        c
    })
    .unwrap();
    let c = noether_vector(&gen, &p("u_xy"));
    let w = gen.characteristic();
    assert_eq!(c[0], w.d(Indep::Y).scale(&Q::new(1.into(), 2.into())));
    assert_eq!(c[1], w.d(Indep::X).scale(&Q::new(1.into(), 2.into())));
    assert!(c[2].is_zero());
    assert_eq!(raw_divergence(&c), w.d(Indep::X).d(Indep::Y));
}

#[test]
fn weighted_operator_examples() {
    let l = p("v*u_xx");
    assert_eq!(weighted_euler_lagrange(&l, Indep::X, JetIndex::ZERO), -p("v_x"));
    assert_eq!(weighted_euler_lagrange(&l, Indep::X, JetIndex::unit(Indep::X)), p("v"));
    assert!(weighted_euler_lagrange(&l, Indep::Y, JetIndex::ZERO).is_zero());
    let l = p("u^3 + alpha*u");
    for i in Indep::ALL {
        assert!(weighted_euler_lagrange(&l, i, JetIndex::ZERO).is_zero());
    }
}

#[test]
fn zero_generator_gives_zero_vector() {
    let g = Generator { xi: [Expr::zero(), Expr::zero(), Expr::zero()], eta: Expr::zero() };
    let fam = Family::generic();
    let cv = conserved_vector(&g, &fam, &Expr::v(), &ConstraintSet::default()).unwrap();
    assert!(cv.is_zero());
    assert!(divergence(&cv, &fam).unwrap().is_zero());
    assert!(is_trivial(&cv, &fam).unwrap());
    assert!(triviality(&cv, &fam).unwrap().vanishes);
}

#[test]
fn zero_multiplier_rejected() {
    let g = Generator::parse("d_x", &ParseContext::default()).unwrap();
    assert!(conserved_vector(&g, &Family::generic(), &Expr::zero(), &ConstraintSet::default()).is_err());
}

fn quasi_member() -> Family {
    Family::generic().with("f", p("alpha")).with("r", p("u/2 + beta")).with("h", p("g'(u)"))
}

#[test]
fn mass_law_of_the_quasi_member() {
    // On this member 1 * Delta is a total divergence, found by hand:
    // D_x(u u_x/2 + beta u_x - u_xxx - 2 u_xyy + alpha x) + D_y(g u_y - u_yyy) - D_t(u).
    let fam = quasi_member();
    let c = [p("u*u_x/2 + beta*u_x - u_xxx - 2*u_xyy + alpha*x"), p("g(u)*u_y - u_yyy"), p("-u")];
    assert_eq!(raw_divergence(&c), fam.equation());
    let cv = ConservedVector::new(c, ConstraintSet::default());
    assert!(divergence(&cv, &fam).unwrap().is_zero());
    let t = triviality(&cv, &fam).unwrap();
    assert_eq!(t.characteristic, Expr::int(-1));
    assert!(!t.is_trivial() && !t.vanishes);
    let broken = ConservedVector::new([p("u*u_x/2"), p("g(u)*u_y - u_yyy"), p("-u")], ConstraintSet::default());
    assert!(!divergence(&broken, &fam).unwrap().is_zero());
}

#[test]
fn translations_of_the_quasi_member_are_trivial() {
    let fam = quasi_member();
    for g in ["d_x", "d_y", "d_t"] {
        let gen = Generator::parse(g, &ParseContext::default()).unwrap();
        let cv = conserved_vector(&gen, &fam, &p("c"), &ConstraintSet::default()).unwrap();
        assert!(divergence(&cv, &fam).unwrap().is_zero(), "{g}");
        assert!(is_trivial(&cv, &fam).unwrap(), "{g}");
    }
}

#[test]
fn proportional_densities() {
    let a = p("alpha*u_x - 2*alpha*F1(x,y,t)");
    assert_eq!(proportionality(&a, &p("-u_x/3 + 2/3*F1(x,y,t)")).unwrap(), Some(p("-3*alpha")));
    assert_eq!(proportionality(&a, &p("x*u_x - 2*x*F1(x,y,t)")).unwrap(), None);
    assert_eq!(proportionality(&a, &p("u_x - F1(x,y,t)")).unwrap(), None);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, .. ProptestConfig::default() })]

    #[test]
    fn noether_identity_off_shell(gen in common::generator(), l in common::poly(4, true, 3)) {
        prop_assert!(common::noether_defect(&gen, &l).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, .. ProptestConfig::default() })]

    #[test]
    fn weighted_matches_classical(gen in common::generator(), l in common::poly(4, true, 3)) {
        let a = noether_vector(&gen, &l);
        let b = common::classical_vector(&gen, &l, 4);
        for k in 0..3 {
            prop_assert_eq!(&a[k], &b[k]);
        }
    }

    // The vector need not be conserved: the gauge term leaves whatever divergence it has.
    #[test]
    fn gauge_term_keeps_divergence(a in common::poly(2, true, 3)) {
        let fam = Family::generic().with("r", p("u/2 + beta")).with("h", p("g'(u)")).with("f", p("alpha*u"));
        let mut ctx = ParseContext::default();
        ctx.declare_function("F1", vec![gks_core::Atom::Indep(Indep::X), gks_core::Atom::Indep(Indep::Y), gks_core::Atom::Indep(Indep::T)]);
        let phi = parse_expr("exp(x + t)*F1", &ctx).unwrap();
        let gen = Generator::parse("d_y", &ctx).unwrap();
        let rules = ConstraintSet::default();
        let cv = conserved_vector(&gen, &fam, &phi, &rules).unwrap();
        let base = divergence(&cv, &fam).unwrap().residual;
        let c = [&cv.c[0] + &a.d(Indep::Y), &cv.c[1] - &a.d(Indep::X), cv.c[2].clone()];
        prop_assert!(raw_divergence(&[a.d(Indep::Y), -a.d(Indep::X), Expr::zero()]).is_zero());
        prop_assert_eq!(divergence(&ConservedVector::new(c, rules), &fam).unwrap().residual, base);
    }
}

#[test]
fn total_derivative_multi_matches_iterated() {
    let e = p("u_x*g(u) + x*u_yy");
    let j = JetIndex::new(1, 2, 0);
    assert_eq!(total_derivative_multi(&e, j), e.d(Indep::X).d(Indep::Y).d(Indep::Y));
}
