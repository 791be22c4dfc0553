//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := '(' expr ')' | rational | var | '-' factor
//! rational := int ('/' uint)?
//! var      := 'x' uint
//! ```
//!
//! Implicit multiplication is rejected. Variables are 1-based (`x1..xd`).

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

use super::ast::Expr;
use crate::polyring::Rational;

/// Largest accepted literal exponent.
pub const MAX_EXPONENT: u32 = 1000;
/// Largest accepted nesting of parentheses and unary minus.
pub const MAX_DEPTH: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnknownVariable { index: String, arity: usize },
    BadExponent,
    ExponentTooLarge,
    ZeroDenominator,
    TooDeep,
}

/// Parse failure at byte `offset`, with the set of tokens that would have
/// been accepted there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: ", self.offset)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}")?,
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected {t}")?,
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input")?,
            ParseErrorKind::UnknownVariable { index, arity } => {
                write!(f, "unknown variable x{index} (arity {arity})")?
            }
            ParseErrorKind::BadExponent => write!(f, "exponent must be a non-negative integer literal")?,
            ParseErrorKind::ExponentTooLarge => write!(f, "exponent exceeds {MAX_EXPONENT}")?,
            ParseErrorKind::ZeroDenominator => write!(f, "zero denominator in literal")?,
            ParseErrorKind::TooDeep => write!(f, "nesting deeper than {MAX_DEPTH}")?,
        }
        if !self.expected.is_empty() {
            write!(f, "; expected one of: {}", self.expected.iter().join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Int(String),
    Var(String),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Int(s) => format!("integer {s}"),
            Tok::Var(s) => format!("variable x{s}"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits_from = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let b = bytes[i];
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                let end = digits_from(i);
                out.push((i, Tok::Int(src[i..end].to_string())));
                i = end;
                continue;
            }
            b'x' => {
                let end = digits_from(i + 1);
                if end == i + 1 {
                    let kind = match bytes.get(i + 1) {
                        Some(_) => ParseErrorKind::UnexpectedChar(src[i + 1..].chars().next().unwrap_or('?')),
                        None => ParseErrorKind::UnexpectedEnd,
                    };
                    return Err(ParseError { offset: i + 1, kind, expected: vec!["variable index"] });
                }
                out.push((i, Tok::Var(src[i + 1..end].to_string())));
                i = end;
                continue;
            }
            _ => {
                let c = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: i,
                    kind: ParseErrorKind::UnexpectedChar(c),
                    expected: vec![],
                });
            }
        };
        out.push((i, tok));
        i += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    arity: usize,
    depth: usize,
}

const BASE_START: [&str; 4] = ["'('", "integer", "variable", "'-'"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&'static str]) -> ParseError {
        let kind = match self.peek() {
            Tok::End => ParseErrorKind::UnexpectedEnd,
            t => ParseErrorKind::UnexpectedToken(t.describe()),
        };
        ParseError { offset: self.offset(), kind, expected: expected.to_vec() }
    }

    fn error(&self, offset: usize, kind: ParseErrorKind, expected: &[&'static str]) -> ParseError {
        ParseError { offset, kind, expected: expected.to_vec() }
    }

    fn descend(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error(self.offset(), ParseErrorKind::TooDeep, &[]));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let Tok::Int(digits) = self.peek().clone() else {
            return Err(self.error(at, ParseErrorKind::BadExponent, &["integer"]));
        };
        self.bump();
        if *self.peek() == Tok::Slash {
            return Err(self.error(at, ParseErrorKind::BadExponent, &["integer"]));
        }
        let n = digits
            .parse::<u32>()
            .ok()
            .filter(|&n| n <= MAX_EXPONENT)
            .ok_or_else(|| self.error(at, ParseErrorKind::ExponentTooLarge, &[]))?;
        Ok(Expr::Pow(Box::new(base), n))
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::LParen => {
                self.descend()?;
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected(&["')'", "'+'", "'-'", "'*'", "'^'"]));
                }
                self.bump();
                self.depth -= 1;
                Ok(inner)
            }
            Tok::Minus => {
                self.descend()?;
                self.bump();
                let inner = self.factor()?;
                self.depth -= 1;
                Ok(Expr::Neg(Box::new(inner)))
            }
            Tok::Int(num) => {
                self.bump();
                let numer: BigInt = num.parse().expect("lexer yields digits");
                let denom = if *self.peek() == Tok::Slash {
                    self.bump();
                    let dat = self.offset();
                    let Tok::Int(den) = self.peek().clone() else {
                        return Err(self.unexpected(&["integer"]));
                    };
                    self.bump();
                    let den: BigInt = den.parse().expect("lexer yields digits");
                    if den.is_zero() {
                        return Err(self.error(dat, ParseErrorKind::ZeroDenominator, &[]));
                    }
                    den
                } else {
                    BigInt::from(1)
                };
                Ok(Expr::Num(Rational::new(numer, denom)))
            }
            Tok::Var(idx) => {
                self.bump();
                match idx.parse::<usize>() {
                    Ok(i) if i >= 1 && i <= self.arity => Ok(Expr::Var(i - 1)),
                    _ => Err(self.error(
                        at,
                        ParseErrorKind::UnknownVariable { index: idx, arity: self.arity },
                        &[],
                    )),
                }
            }
            _ => Err(self.unexpected(&BASE_START)),
        }
    }
}

/// Parses `src` as a polynomial in `x1..x{arity}`.
pub fn parse(src: &str, arity: usize) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, arity, depth: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected(&["'+'", "'-'", "'*'", "'^'", "end of input"]));
    }
    Ok(e)
}
