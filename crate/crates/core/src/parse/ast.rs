use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use super::lexer::Tok;
use super::{ParseError, Span};
use crate::expr::Q;

#[derive(Clone, Debug)]
pub(crate) enum Ast {
    Num(Q),
    Ident { name: String, primes: u32 },
    Call { name: String, primes: u32, args: Vec<Spanned> },
    Neg(Box<Spanned>),
    Add(Box<Spanned>, Box<Spanned>),
    Sub(Box<Spanned>, Box<Spanned>),
    Mul(Box<Spanned>, Box<Spanned>),
    Div(Box<Spanned>, Box<Spanned>),
    Pow(Box<Spanned>, Box<Spanned>),
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub ast: Ast,
    pub span: Span,
}

pub(crate) struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

fn node(ast: Ast, span: Span) -> Spanned {
    Spanned { ast, span }
}

impl Parser {
    pub fn new(toks: Vec<(Tok, Span)>) -> Parser {
        Parser { toks, pos: 0 }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<Span, ParseError> {
        if *self.peek() == t {
            Ok(self.bump().1)
        } else {
            Err(ParseError::new(alloc::format!("expected {what}"), self.span()))
        }
    }

    pub fn parse_all(&mut self) -> Result<Spanned, ParseError> {
        let e = self.expr()?;
        if *self.peek() != Tok::End {
            return Err(ParseError::new("unexpected trailing input", self.span()));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Spanned, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let add = match self.peek() {
                Tok::Plus => true,
                Tok::Minus => false,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.join(rhs.span);
            let ast = if add { Ast::Add(Box::new(lhs), Box::new(rhs)) } else { Ast::Sub(Box::new(lhs), Box::new(rhs)) };
            lhs = node(ast, span);
        }
    }

    fn term(&mut self) -> Result<Spanned, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let mul = match self.peek() {
                Tok::Star => true,
                Tok::Slash => false,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            let span = lhs.span.join(rhs.span);
            let ast = if mul { Ast::Mul(Box::new(lhs), Box::new(rhs)) } else { Ast::Div(Box::new(lhs), Box::new(rhs)) };
            lhs = node(ast, span);
        }
    }

    fn unary(&mut self) -> Result<Spanned, ParseError> {
        match self.peek() {
            Tok::Minus => {
                let s = self.bump().1;
                let x = self.unary()?;
                let span = s.join(x.span);
                Ok(node(Ast::Neg(Box::new(x)), span))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Spanned, ParseError> {
        let base = self.primary()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = self.unary()?;
            let span = base.span.join(e.span);
            return Ok(node(Ast::Pow(Box::new(base), Box::new(e)), span));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Spanned, ParseError> {
        let (t, s) = self.bump();
        match t {
            Tok::Num(n, scale) => {
                let d = num_traits::pow(num_bigint::BigInt::from(10), scale as usize);
                Ok(node(Ast::Num(Q::new(n, d)), s))
            }
            Tok::LParen => {
                let e = self.expr()?;
                let close = self.expect(Tok::RParen, "')'")?;
                Ok(Spanned { ast: e.ast, span: s.join(close) })
            }
            Tok::Ident(name, primes) => {
                if *self.peek() != Tok::LParen {
                    return Ok(node(Ast::Ident { name, primes }, s));
                }
                self.bump();
                let mut args = Vec::new();
                if *self.peek() != Tok::RParen {
                    loop {
                        args.push(self.expr()?);
                        if *self.peek() == Tok::Comma {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                let close = self.expect(Tok::RParen, "')' or ','")?;
                Ok(node(Ast::Call { name, primes, args }, s.join(close)))
            }
            Tok::End => Err(ParseError::new("unexpected end of input", s)),
            _ => Err(ParseError::new("expected a number, identifier or '('", s)),
        }
    }
}
