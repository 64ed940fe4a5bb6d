//! Text syntax for expressions and point-symmetry generators.
//!
//! ```text
//! u_t + 1/2*u_x^2 + h(u)*u_y^2 - exp(alpha*t)*F1_xt(x,y,t) + diff(g(u),u,2) + Int(g(u),u)
//! ```
//! Jets are `u` or `v` followed by `_` and derivative letters in any order. A function
//! suffix such as `xi3_xu` differentiates in the named arguments; primes differentiate a
//! one-argument function.

mod ast;
mod lexer;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::expr::{Atom, Dep, Exponent, Expr, FuncApp, Indep, JetIndex, Symbol};
use ast::{Ast, Parser, Spanned};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start, end }
    }

    fn join(self, o: Span) -> Span {
        Span::new(self.start.min(o.start), self.end.max(o.end))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub span: Span,
}

impl ParseError {
    pub(crate) fn new(message: impl Into<String>, span: Span) -> ParseError {
        ParseError { message: message.into(), span }
    }

    /// Message with the offending source excerpt underlined.
    pub fn render(&self, src: &str) -> String {
        let start = self.span.start.min(src.len());
        let end = self.span.end.clamp(start, src.len());
        let width = src[start..end].chars().count().max(1);
        let pad = src[..start].chars().count();
        format!("{}\n  {}\n  {}{}", self, src, " ".repeat(pad), "^".repeat(width))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}..{}: {}", self.span.start, self.span.end, self.message)
    }
}

impl core::error::Error for ParseError {}

const GREEK: &[&str] = &[
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "theta", "kappa", "lambda", "mu", "nu", "sigma", "omega",
];

/// Markers standing for the basis vector fields while a generator is parsed.
pub(crate) const MARKERS: [&str; 4] = ["%d_x", "%d_y", "%d_t", "%d_u"];

/// Names, signatures and definitions visible to the parser.
#[derive(Clone, Debug)]
pub struct ParseContext {
    functions: BTreeMap<String, Vec<Atom>>,
    params: BTreeSet<String>,
    defs: BTreeMap<String, Expr>,
}

impl Default for ParseContext {
    fn default() -> Self {
        let mut c = ParseContext { functions: BTreeMap::new(), params: BTreeSet::new(), defs: BTreeMap::new() };
        let full = vec![Atom::Indep(Indep::X), Atom::Indep(Indep::Y), Atom::Indep(Indep::T), Atom::u()];
        for n in ["f", "g", "h", "r"] {
            c.functions.insert(n.into(), vec![Atom::u()]);
        }
        for n in ["phi", "xi1", "xi2", "xi3", "eta"] {
            c.functions.insert(n.into(), full.clone());
        }
        c
    }
}

impl ParseContext {
    /// Declare a function signature, enabling the bare `F` and `F_xy` forms.
    pub fn declare_function(&mut self, name: &str, args: Vec<Atom>) -> &mut Self {
        self.functions.insert(name.into(), args);
        self
    }

    pub fn declare_param(&mut self, name: &str) -> &mut Self {
        self.params.insert(name.into());
        self
    }

    pub fn define(&mut self, name: &str, value: Expr) -> &mut Self {
        self.defs.insert(name.into(), value);
        self
    }

    pub fn signature(&self, name: &str) -> Option<&[Atom]> {
        self.functions.get(name).map(Vec::as_slice)
    }

    fn is_param(&self, name: &str) -> bool {
        self.params.contains(name)
            || GREEK.contains(&name)
            || name == "c"
            || name == "k"
            || (name.len() > 1 && name.starts_with('c') && name[1..].bytes().all(|b| b.is_ascii_digit()))
    }

    fn is_function_name(&self, name: &str) -> bool {
        self.functions.contains_key(name) || name.chars().next().is_some_and(|c| c.is_ascii_uppercase())
    }
}

pub fn parse_expr(src: &str, ctx: &ParseContext) -> Result<Expr, ParseError> {
    let ast = Parser::new(lexer::lex(src)?).parse_all()?;
    Lower { ctx, generator: false }.lower(&ast)
}

/// Parse `a*d_x + b*d_y + c*d_t + e*d_u` into `[a, b, c, e]`.
pub fn parse_generator(src: &str, ctx: &ParseContext) -> Result<[Expr; 4], ParseError> {
    let ast = Parser::new(lexer::lex(src)?).parse_all()?;
    let e = Lower { ctx, generator: true }.lower(&ast)?;
    let whole = Span::new(0, src.len());
    let markers: Vec<Atom> = MARKERS.iter().map(|m| Atom::param(m)).collect();
    let mut out: [Expr; 4] = Default::default();
    let mut rest = e.clone();
    for (k, m) in markers.iter().enumerate() {
        let c = e.partial(m);
        if markers.iter().any(|n| c.contains_atom(n)) {
            return Err(ParseError::new("generator is not linear in d_x, d_y, d_t, d_u", whole));
        }
        rest = &rest - &(&c * &Expr::from_atom(m.clone()));
        out[k] = c;
    }
    if !rest.is_zero() {
        return Err(ParseError::new("generator has a term without d_x, d_y, d_t or d_u", whole));
    }
    Ok(out)
}

impl Default for Expr {
    fn default() -> Self {
        Expr::zero()
    }
}

struct Lower<'a> {
    ctx: &'a ParseContext,
    generator: bool,
}

fn var_atom(name: &str) -> Option<Atom> {
    match name {
        "x" => Some(Atom::Indep(Indep::X)),
        "y" => Some(Atom::Indep(Indep::Y)),
        "t" => Some(Atom::Indep(Indep::T)),
        "u" => Some(Atom::u()),
        "v" => Some(Atom::v()),
        _ => None,
    }
}

fn jet_suffix(s: &str) -> Option<JetIndex> {
    let mut j = JetIndex::ZERO;
    for c in s.chars() {
        j = j.shifted(Indep::from_char(c)?);
    }
    (j.order() > 0).then_some(j)
}

impl Lower<'_> {
    fn lower(&self, n: &Spanned) -> Result<Expr, ParseError> {
        let span = n.span;
        match &n.ast {
            Ast::Num(q) => Ok(Expr::constant(q.clone())),
            Ast::Neg(x) => Ok(-self.lower(x)?),
            Ast::Add(a, b) => Ok(&self.lower(a)? + &self.lower(b)?),
            Ast::Sub(a, b) => Ok(&self.lower(a)? - &self.lower(b)?),
            Ast::Mul(a, b) => Ok(&self.lower(a)? * &self.lower(b)?),
            Ast::Div(a, b) => {
                let d = self.lower(b)?;
                if d.is_zero() {
                    return Err(ParseError::new("division by zero", b.span));
                }
                self.lower(a)?.div(&d).map_err(|e| ParseError::new(e.to_string(), span))
            }
            Ast::Pow(a, b) => {
                let base = self.lower(a)?;
                let e = self.lower(b)?;
                let q = e
                    .as_constant()
                    .ok_or_else(|| ParseError::new("exponent must be a rational constant", b.span))?;
                let (n, d) = (q.numer().to_i64(), q.denom().to_i64());
                let (Some(n), Some(d)) = (n, d) else {
                    return Err(ParseError::new("exponent too large", b.span));
                };
                base.pow(Exponent::new(n, d)).map_err(|e| ParseError::new(e.to_string(), span))
            }
            Ast::Ident { name, primes } => self.ident(name, *primes, span),
            Ast::Call { name, primes, args } => self.call(name, *primes, args, span),
        }
    }

    fn ident(&self, name: &str, primes: u32, span: Span) -> Result<Expr, ParseError> {
        if primes == 0 {
            if let Some(a) = var_atom(name) {
                return Ok(Expr::from_atom(a));
            }
            if let Some(e) = self.ctx.defs.get(name) {
                return Ok(e.clone());
            }
            if self.ctx.is_param(name) {
                return Ok(Expr::param(name));
            }
            if self.generator {
                if let Some(k) = ["d_x", "d_y", "d_t", "d_u"].iter().position(|m| *m == name) {
                    return Ok(Expr::param(MARKERS[k]));
                }
            }
        }
        if let Some(sig) = self.ctx.signature(name) {
            let args = sig.iter().cloned().map(Expr::from_atom).collect();
            return self.apply(name, primes, "", args, span);
        }
        if let Some((base, suffix)) = name.split_once('_') {
            if primes == 0 && (base == "u" || base == "v") {
                let dep = if base == "u" { Dep::U } else { Dep::V };
                return jet_suffix(suffix)
                    .map(|j| Expr::jet(dep, j))
                    .ok_or_else(|| ParseError::new(format!("invalid jet suffix '{suffix}'"), span));
            }
            if let Some(sig) = self.ctx.signature(base) {
                let args = sig.iter().cloned().map(Expr::from_atom).collect();
                return self.apply(base, primes, suffix, args, span);
            }
            if var_atom(base).is_some() || self.ctx.is_param(base) {
                return Err(ParseError::new(format!("derivative suffix on '{base}', which is not a function or dependent variable"), span));
            }
        }
        Err(ParseError::new(format!("unknown identifier '{name}'"), span))
    }

    fn call(&self, name: &str, primes: u32, args: &[Spanned], span: Span) -> Result<Expr, ParseError> {
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(ParseError::new(format!("{name} takes {n} argument(s)"), span))
            }
        };
        match name {
            "exp" | "sin" | "cos" | "sqrt" => {
                arity(1)?;
                let a = self.lower(&args[0])?;
                return match name {
                    "exp" => Ok(Expr::exp(a)),
                    "sin" => Ok(Expr::sin(a)),
                    "cos" => Ok(Expr::cos(a)),
                    _ => a.sqrt().map_err(|e| ParseError::new(e.to_string(), span)),
                };
            }
            "diff" => {
                if args.len() != 2 && args.len() != 3 {
                    return Err(ParseError::new("diff takes (expr, var) or (expr, var, n)", span));
                }
                let e = self.lower(&args[0])?;
                let v = self.lower(&args[1])?;
                let v = v
                    .as_atom()
                    .filter(|a| a.is_primitive())
                    .cloned()
                    .ok_or_else(|| ParseError::new("diff variable must be a symbol", args[1].span))?;
                let n = match args.get(2) {
                    None => 1,
                    Some(a) => self
                        .lower(a)?
                        .as_constant()
                        .filter(|q| q.is_integer() && *q >= Zero::zero())
                        .and_then(|q| q.numer().to_u32())
                        .ok_or_else(|| ParseError::new("diff order must be a natural number", a.span))?,
                };
                let mut r = e;
                for _ in 0..n {
                    r = r.partial(&v);
                }
                return Ok(r);
            }
            "Int" => {
                arity(2)?;
                let e = self.lower(&args[0])?;
                let v = self.lower(&args[1])?;
                let v = v.as_atom().cloned().ok_or_else(|| ParseError::new("Int variable must be a symbol", args[1].span))?;
                return crate::expr::integrate(&e, &v).map_err(|e| ParseError::new(e.to_string(), span));
            }
            _ => {}
        }
        let (base, suffix) = match name.split_once('_') {
            Some((b, s)) if self.ctx.is_function_name(b) => (b, s),
            _ => (name, ""),
        };
        if !self.ctx.is_function_name(base) {
            return Err(ParseError::new(format!("unknown function '{name}'"), span));
        }
        let vals = args.iter().map(|a| self.lower(a)).collect::<Result<Vec<_>, _>>()?;
        if let Some(sig) = self.ctx.signature(base) {
            if sig.len() != vals.len() {
                return Err(ParseError::new(format!("{base} takes {} argument(s)", sig.len()), span));
            }
        }
        self.apply(base, primes, suffix, vals, span)
    }

    fn apply(&self, name: &str, primes: u32, suffix: &str, args: Vec<Expr>, span: Span) -> Result<Expr, ParseError> {
        let mut app = FuncApp::new(Symbol::from(name), args);
        if primes > 0 {
            if app.args.len() != 1 {
                return Err(ParseError::new("primes need a one-argument function", span));
            }
            app.deriv[0] = primes as i32;
        }
        for c in suffix.chars() {
            let k = app
                .args
                .iter()
                .position(|a| a.as_atom().is_some_and(|a| matches!(a, Atom::Indep(_) | Atom::Jet(Dep::U, JetIndex::ZERO)) && a.to_string() == c.to_string()))
                .ok_or_else(|| ParseError::new(format!("'{c}' is not a variable argument of {name}"), span))?;
            app.deriv[k] += 1;
        }
        Ok(Expr::func_app(app))
    }
}
