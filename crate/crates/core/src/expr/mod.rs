//! Text format for real polynomials. [`Poly`]'s `Display` output is valid
//! input, so `parse_poly(&p.to_string(), p.arity()) == Ok(p)`.

mod ast;
mod parser;

pub use ast::{lower, Expr};
pub use parser::{parse, ParseError, ParseErrorKind, MAX_DEPTH, MAX_EXPONENT};

use crate::polyring::Poly;

/// [`parse`] followed by [`lower`].
pub fn parse_poly(src: &str, arity: usize) -> Result<Poly, ParseError> {
    parse(src, arity).map(|e| lower(&e, arity))
}
