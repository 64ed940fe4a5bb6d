//! Explicit operator tree, used as the interchange form for serialization.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::One;

use super::{Atom, Dep, Exponent, Expr, FuncApp, Indep, JetIndex, Q, Symbol};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Num(Q),
    Param(String),
    Var(Indep),
    Jet(Dep, JetIndex),
    Func { name: String, deriv: Vec<i32>, args: Vec<Node> },
    Add(Vec<Node>),
    Mul(Vec<Node>),
    Pow(Box<Node>, Exponent),
    Exp(Box<Node>),
    Sin(Box<Node>),
    Cos(Box<Node>),
}

impl Node {
    pub fn from_expr(e: &Expr) -> Node {
        let terms: Vec<Node> = e
            .terms()
            .iter()
            .map(|t| {
                let mut fs = Vec::new();
                if !t.coeff.is_one() || t.mono.is_one() {
                    fs.push(Node::Num(t.coeff.clone()));
                }
                for (a, x) in t.mono.factors() {
                    let base = Node::from_atom(a);
                    fs.push(if x.is_one() { base } else { Node::Pow(Box::new(base), *x) });
                }
                if fs.len() == 1 {
                    fs.pop().unwrap()
                } else {
                    Node::Mul(fs)
                }
            })
            .collect();
        match terms.len() {
            0 => Node::Num(Q::from_integer(0.into())),
            1 => terms.into_iter().next().unwrap(),
            _ => Node::Add(terms),
        }
    }

    fn from_atom(a: &Atom) -> Node {
        match a {
            Atom::Surd(p) => Node::Num(Q::from_integer((*p).into())),
            Atom::Param(s) => Node::Param(String::from(&**s)),
            Atom::Indep(d) => Node::Var(*d),
            Atom::Jet(d, j) => Node::Jet(*d, *j),
            Atom::Func(app) => Node::Func {
                name: String::from(&*app.name),
                deriv: app.deriv.to_vec(),
                args: app.args.iter().map(Node::from_expr).collect(),
            },
            Atom::Exp(x) => Node::Exp(Box::new(Node::from_expr(x))),
            Atom::Sin(x) => Node::Sin(Box::new(Node::from_expr(x))),
            Atom::Cos(x) => Node::Cos(Box::new(Node::from_expr(x))),
            Atom::Radical(x) => Node::from_expr(x),
        }
    }

    pub fn to_expr(&self) -> Result<Expr> {
        Ok(match self {
            Node::Num(q) => Expr::constant(q.clone()),
            Node::Param(s) => Expr::param(s),
            Node::Var(d) => Expr::indep(*d),
            Node::Jet(d, j) => Expr::jet(*d, *j),
            Node::Func { name, deriv, args } => {
                let args = args.iter().map(Node::to_expr).collect::<Result<Vec<_>>>()?;
                if deriv.len() != args.len() {
                    return Err(crate::Error::Structural(alloc::format!("derivative index arity of {name}")));
                }
                Expr::func_app(FuncApp { name: Symbol::from(name.as_str()), deriv: deriv.iter().copied().collect(), args })
            }
            Node::Add(xs) => {
                let v = xs.iter().map(Node::to_expr).collect::<Result<Vec<_>>>()?;
                Expr::sum(&v)
            }
            Node::Mul(xs) => {
                let mut acc = Expr::one();
                for x in xs {
                    acc = &acc * &x.to_expr()?;
                }
                acc
            }
            Node::Pow(b, e) => b.to_expr()?.pow(*e)?,
            Node::Exp(x) => Expr::exp(x.to_expr()?),
            Node::Sin(x) => Expr::sin(x.to_expr()?),
            Node::Cos(x) => Expr::cos(x.to_expr()?),
        })
    }
}
