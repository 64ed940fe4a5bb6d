use gks::context::{family, generator};
use gks::golden::{GoldenDir, Table1};
use gks_core::constraint::ConstraintSet;
use gks_core::parse::ParseContext;
use gks_core::symmetry::span::Basis;
use gks_core::symmetry::{check_symmetry, Generator};
use gks_core::{Atom, Expr, Indep};

fn act(x: &Generator, f: &Expr) -> Expr {
    let mut acc = &x.eta * &f.partial(&Atom::u());
    for d in Indep::ALL {
        acc = &acc + &(&x.xi[d.index()] * &f.partial(&Atom::Indep(d)));
    }
    acc
}

fn bracket(x: &Generator, y: &Generator) -> Generator {
    let c = |a: &Expr, b: &Expr| &act(x, b) - &act(y, a);
    Generator {
        xi: [c(&x.xi[0], &y.xi[0]), c(&x.xi[1], &y.xi[1]), c(&x.xi[2], &y.xi[2])],
        eta: c(&x.eta, &y.eta),
    }
}

/// One expression per generator, tagging each component with a marker parameter.
fn flatten(g: &Generator) -> Expr {
    let m = ["mark_x", "mark_y", "mark_t"].map(Expr::param);
    let mut acc = &g.eta * &Expr::param("mark_u");
    for (xi, m) in g.xi.iter().zip(&m) {
        acc = &acc + &(xi * m);
    }
    acc
}

#[test]
fn row_five_algebra_closes() {
    let t: Table1 = GoldenDir::default().load("table1.json").unwrap();
    let row = t.rows.iter().find(|r| r.row == 5).unwrap();
    let ctx = ParseContext::default();
    let fam = family(&row.family, "table1:5", &ctx).unwrap();
    let mut gens = Vec::new();
    for e in t.base.iter().chain(&row.generators) {
        let g = generator(&e.generator, &ctx).unwrap();
        assert!(check_symmetry(&g, &fam, &ConstraintSet::default()).unwrap().is_symmetry, "{}", e.label);
        gens.push((e.label.clone(), g));
    }
    assert_eq!(gens.len(), 8);
    // Structure constants may carry the row's parameter.
    let beta = Expr::param("beta");
    let span: Vec<Expr> = gens.iter().flat_map(|(_, g)| [flatten(g), &beta * &flatten(g)]).collect();
    let basis = Basis::from_exprs(&span);

    let x2 = &gens.iter().find(|(l, _)| l == "X2").unwrap().1;
    let x8 = &gens.iter().find(|(l, _)| l == "X8").unwrap().1;
    assert_eq!(bracket(x2, x8), *x2);
    for (a, x) in &gens {
        for (b, y) in &gens {
            let z = bracket(x, y);
            assert!(basis.contains(&flatten(&z)), "[{a}, {b}] = {z}");
        }
    }
    let outside = generator("x*d_x", &ctx).unwrap();
    assert!(!basis.contains(&flatten(&outside)));
}
