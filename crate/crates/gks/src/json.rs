//! Expressions as JSON: the canonical operator tree plus the infix string.

use gks_core::expr::Node;
use gks_core::{Dep, Expr, Indep, Q};
use serde_json::{json, Value};

fn q(q: &Q) -> Value {
    if q.is_integer() {
        json!(q.numer().to_string())
    } else {
        json!(format!("{}/{}", q.numer(), q.denom()))
    }
}

pub fn node(n: &Node) -> Value {
    match n {
        Node::Num(c) => json!({"num": q(c)}),
        Node::Param(s) => json!({"param": s}),
        Node::Var(d) => json!({"var": d.name()}),
        Node::Jet(d, j) => json!({"jet": {"dep": d.name(), "x": j.ix, "y": j.iy, "t": j.it}}),
        Node::Func { name, deriv, args } => json!({"func": name, "deriv": deriv, "args": args.iter().map(node).collect::<Vec<_>>()}),
        Node::Add(xs) => json!({"add": xs.iter().map(node).collect::<Vec<_>>()}),
        Node::Mul(xs) => json!({"mul": xs.iter().map(node).collect::<Vec<_>>()}),
        Node::Pow(b, e) => json!({"pow": [node(b), q(&Q::new((*e.numer()).into(), (*e.denom()).into()))]}),
        Node::Exp(x) => json!({"exp": node(x)}),
        Node::Sin(x) => json!({"sin": node(x)}),
        Node::Cos(x) => json!({"cos": node(x)}),
    }
}

fn parse_q(v: &Value) -> Option<Q> {
    let s = v.as_str()?;
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    Some(Q::new(n.trim().parse().ok()?, d.trim().parse().ok()?))
}

fn indep(s: &str) -> Option<Indep> {
    Indep::ALL.into_iter().find(|d| d.name() == s)
}

pub fn to_node(v: &Value) -> Option<Node> {
    let o = v.as_object()?;
    let (k, x) = o.iter().next()?;
    let list = |x: &Value| x.as_array().and_then(|a| a.iter().map(to_node).collect::<Option<Vec<_>>>());
    Some(match k.as_str() {
        "num" => Node::Num(parse_q(x)?),
        "param" => Node::Param(x.as_str()?.to_string()),
        "var" => Node::Var(indep(x.as_str()?)?),
        "jet" => {
            let dep = match x.get("dep")?.as_str()? {
                "u" => Dep::U,
                "v" => Dep::V,
                _ => return None,
            };
            let c = |k| x.get(k).and_then(Value::as_u64).map(|n| n as u16);
            Node::Jet(dep, gks_core::JetIndex::new(c("x")?, c("y")?, c("t")?))
        }
        "func" => Node::Func {
            name: x.as_str()?.to_string(),
            deriv: o.get("deriv")?.as_array()?.iter().map(|d| d.as_i64().map(|d| d as i32)).collect::<Option<_>>()?,
            args: list(o.get("args")?)?,
        },
        "add" => Node::Add(list(x)?),
        "mul" => Node::Mul(list(x)?),
        "pow" => {
            let a = x.as_array()?;
            let e = parse_q(a.get(1)?)?;
            let e = gks_core::expr::Exponent::new(i64::try_from(e.numer()).ok()?, i64::try_from(e.denom()).ok()?);
            Node::Pow(Box::new(to_node(a.first()?)?), e)
        }
        "exp" => Node::Exp(Box::new(to_node(x)?)),
        "sin" => Node::Sin(Box::new(to_node(x)?)),
        "cos" => Node::Cos(Box::new(to_node(x)?)),
        _ => return None,
    })
}

/// `{"text": infix, "tree": operator tree}`.
pub fn expr(e: &Expr) -> Value {
    json!({"text": e.to_string(), "tree": node(&Node::from_expr(e))})
}

pub fn from_json(v: &Value) -> Option<Expr> {
    to_node(v.get("tree").unwrap_or(v))?.to_expr().ok()
}
