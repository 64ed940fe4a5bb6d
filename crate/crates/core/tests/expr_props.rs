mod common;

use gks_core::expr::{collect_jet_coefficients, Node};
use gks_core::numcheck::{random_assignment, relative_residual, SampleOptions, ZeroClaim};
use gks_core::parse::{parse_expr, ParseContext};
use gks_core::{Expr, Indep};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, .. ProptestConfig::default() })]

    #[test]
    fn total_derivatives_commute(e in common::poly(3, true, 4)) {
        for (a, b) in [(Indep::X, Indep::Y), (Indep::X, Indep::T), (Indep::Y, Indep::T)] {
            prop_assert_eq!(e.d(a).d(b), e.d(b).d(a));
        }
    }

    #[test]
    fn leibniz(a in common::poly(3, true, 3), b in common::poly(3, true, 3)) {
        for d in Indep::ALL {
            prop_assert_eq!((&a * &b).d(d), &(&a.d(d) * &b) + &(&a * &b.d(d)));
        }
    }

    #[test]
    fn cancellation_and_ring_laws(a in common::rich(), b in common::rich(), c in common::rich()) {
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(Node::from_expr(&a).to_expr().unwrap(), a);
    }

    #[test]
    fn jet_collection_reassembles(e in common::poly(4, true, 5)) {
        let c = collect_jet_coefficients(&e, 1).unwrap();
        let parts: Vec<Expr> = c.entries.iter().map(|(m, k)| &m.to_expr() * k).collect();
        prop_assert_eq!(Expr::sum(&parts), e);
    }

    #[test]
    fn zero_sums_evaluate_to_zero(a in common::poly(3, true, 4), b in common::poly(3, true, 4), seed in any::<u64>()) {
        // (a + b)^2 - a^2 - 2ab - b^2 is zero only after expansion; the unexpanded
        // pieces must cancel numerically too.
        let pieces = vec![(&a + &b).pow_int(2), -(&a * &a), &Expr::int(-2) * &(&a * &b), -(&b * &b)];
        let claim = ZeroClaim::new(pieces);
        prop_assert!(claim.exact_sum().is_zero());
        let asg = random_assignment(&claim.pieces, seed, &SampleOptions::default());
        if let Some(r) = relative_residual(&claim, &asg).unwrap() {
            prop_assert!(r < 1e-9, "relative residual {}", r);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, .. ProptestConfig::default() })]

    #[test]
    fn print_parse_round_trip(e in common::rich()) {
        let s = e.to_string();
        let back = parse_expr(&s, &ParseContext::default());
        prop_assert!(back.is_ok(), "{} does not parse: {:?}", s, back);
        prop_assert_eq!(back.unwrap(), e);
    }
}

#[test]
fn parse_error_spans_point_into_the_token() {
    let ctx = ParseContext::default();
    for (src, start, end) in [
        ("x + @ + y", 4, 5),
        ("alpha * u_xq", 8, 12),
        ("sin(x", 5, 5),
        ("x + ", 4, 4),
        ("u_x * w_y", 6, 9),
        ("2 ** x", 3, 4),
        ("exp(x) )", 7, 8),
    ] {
        let err = parse_expr(src, &ctx).unwrap_err();
        assert_eq!((err.span.start, err.span.end), (start, end), "{src}: {}", err.message);
        assert!(err.render(src).contains('^'));
    }
}

#[test]
fn jet_suffixes_are_canonical() {
    let ctx = ParseContext::default();
    assert_eq!(parse_expr("u_ty", &ctx).unwrap(), parse_expr("u_yt", &ctx).unwrap());
    assert_eq!(parse_expr("u_yxyx", &ctx).unwrap(), parse_expr("u_xxyy", &ctx).unwrap());
    assert_eq!(parse_expr("u_yx", &ctx).unwrap().to_string(), "u_xy");
}

#[test]
fn function_derivative_bookkeeping() {
    let ctx = ParseContext::default();
    let p = |s: &str| parse_expr(s, &ctx).unwrap();
    assert_eq!(p("f''(u)").d(Indep::X), p("f'''(u)*u_x"));
    assert_eq!(p("F1_x(x,y,t)").d(Indep::X), p("F1_xx(x,y,t)"));
    assert_eq!(p("g(u^2)").partial(&gks_core::Atom::u()), p("2*u*g'(u^2)"));
}
