//! Exact sparse multivariate polynomials over `Q` and `Q(i)`.

mod monomial;
mod poly;
mod scalar;

pub use monomial::Exponent;
pub use poly::{GaussPoly, Poly, PolyError};
pub use scalar::{
    format_rational, rat, ratio, rational_to_f64, Coeff, CoeffText, Field, GaussRational, Rational,
};
