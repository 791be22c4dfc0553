use crate::polyring::{Poly, Rational};

/// Parsed polynomial expression. Variable indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(usize),
    Num(Rational),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Exact lowering to a polynomial in `arity` variables.
///
/// Panics if the tree mentions a variable at or beyond `arity`; trees from
/// [`parse`](super::parse) with the same arity never do.
pub fn lower(ast: &Expr, arity: usize) -> Poly {
    match ast {
        Expr::Var(i) => Poly::var(arity, *i),
        Expr::Num(r) => Poly::constant(arity, r.clone()),
        Expr::Neg(e) => -lower(e, arity),
        Expr::Add(a, b) => &lower(a, arity) + &lower(b, arity),
        Expr::Sub(a, b) => &lower(a, arity) - &lower(b, arity),
        Expr::Mul(a, b) => &lower(a, arity) * &lower(b, arity),
        Expr::Pow(e, n) => lower(e, arity).pow(*n),
    }
}
