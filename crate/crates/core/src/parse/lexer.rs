use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{ParseError, Span};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Num(BigInt, u32),
    Ident(String, u32),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

pub(crate) fn lex(src: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let mut digits = String::from(&src[start..i]);
            let mut scale = 0u32;
            if i < b.len() && b[i] == b'.' {
                i += 1;
                let fs = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                digits.push_str(&src[fs..i]);
                scale = (i - fs) as u32;
            }
            let n: BigInt = digits.parse().map_err(|_| ParseError::new("bad number", Span::new(start, i)))?;
            out.push((Tok::Num(n, scale), Span::new(start, i)));
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            let name = String::from(&src[start..i]);
            let mut primes = 0;
            while i < b.len() && b[i] == b'\'' {
                primes += 1;
                i += 1;
            }
            out.push((Tok::Ident(name, primes), Span::new(start, i)));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            _ => {
                let w = src[start..].chars().next().map_or(1, char::len_utf8);
                return Err(ParseError::new(alloc::format!("unexpected character '{}'", &src[start..start + w]), Span::new(start, start + w)));
            }
        };
        i += 1;
        out.push((t, Span::new(start, i)));
    }
    out.push((Tok::End, Span::new(b.len(), b.len())));
    Ok(out)
}
