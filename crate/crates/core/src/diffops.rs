//! Differential operators on exact polynomials and on `e^{w·x}·p(x)`.

use num_traits::Zero;
use thiserror::Error;

use crate::polyring::{rat, Coeff, Poly, PolyError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffError {
    #[error("vector has {got} components, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn d<C: Coeff>(p: &Poly<C>, i: usize) -> Poly<C> {
    p.partial(i).expect("index below arity")
}

/// `Σ_i ∂²p/∂x_i²`.
pub fn laplacian<C: Coeff>(p: &Poly<C>) -> Poly<C> {
    (0..p.arity()).fold(Poly::zero(p.arity()), |acc, i| &acc + &d(&d(p, i), i))
}

pub fn gradient<C: Coeff>(p: &Poly<C>) -> Vec<Poly<C>> {
    (0..p.arity()).map(|i| d(p, i)).collect()
}

/// `Σ_i v_i ∂p/∂x_i`.
pub fn dir_derivative(p: &Poly, v: &[Rational]) -> Result<Poly, DiffError> {
    if v.len() != p.arity() {
        return Err(DiffError::Length { expected: p.arity(), got: v.len() });
    }
    Ok(v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(Poly::zero(p.arity()), |acc, (i, c)| &acc + &d(p, i).scale(c)))
}

/// `Σ_i (y_i² + a·y_i + b)·∂²p/∂y_i² + c·Σ_i ∂p/∂y_i`.
///
/// On the Vandermonde polynomial only the `y_i²` part survives: `Δ V`,
/// `Σ y_i ∂²_i V` and `Σ ∂_i V` all vanish, while
/// `Σ y_i² ∂²_i V_d = d(d-1)(d-2)/3 · V_d`.
pub fn konig_apply(p: &Poly, a: &Rational, b: &Rational, c: &Rational) -> Poly {
    let n = p.arity();
    let mut out = Poly::zero(n);
    for i in 0..n {
        let yi = Poly::var(n, i);
        let weight = &(&(&yi * &yi) + &yi.scale(a)) + &Poly::constant(n, b.clone());
        let first = d(p, i);
        out = &out + &(&weight * &d(&first, i));
        out = &out + &first.scale(c);
    }
    out
}

/// Pure second-order part of [`konig_apply`] with `a = b = 0`:
/// `Σ_i y_i²·∂²p/∂y_i²`.
pub fn euler_second_order(p: &Poly) -> Poly {
    let n = p.arity();
    (0..n).fold(Poly::zero(n), |acc, i| {
        let yi = Poly::var(n, i);
        &acc + &(&(&yi * &yi) * &d(&d(p, i), i))
    })
}

/// `Σ_i ∂p/∂y_i`.
pub fn divergence_sum(p: &Poly) -> Poly {
    (0..p.arity()).fold(Poly::zero(p.arity()), |acc, i| &acc + &d(p, i))
}

/// The function `e^{w·x}·body(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpPoly {
    weight: Vec<Rational>,
    body: Poly,
}

impl ExpPoly {
    pub fn new(weight: Vec<Rational>, body: Poly) -> Result<Self, DiffError> {
        if weight.len() != body.arity() {
            return Err(DiffError::Length { expected: body.arity(), got: weight.len() });
        }
        Ok(Self { weight, body })
    }

    /// `e^{0·x}·body`, i.e. the plain polynomial.
    pub fn plain(body: Poly) -> Self {
        Self { weight: vec![Rational::zero(); body.arity()], body }
    }

    pub fn weight(&self) -> &[Rational] {
        &self.weight
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    pub fn arity(&self) -> usize {
        self.body.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn weight_norm_sqr(&self) -> Rational {
        self.weight.iter().map(|w| w * w).sum()
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let expo: f64 = self
            .weight
            .iter()
            .zip(point)
            .map(|(w, x)| crate::polyring::rational_to_f64(w) * x)
            .sum();
        expo.exp() * self.body.eval_f64(point)
    }
}

impl std::fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.arity();
        let exponent = self
            .weight
            .iter()
            .enumerate()
            .fold(Poly::zero(n), |acc, (i, w)| &acc + &Poly::var(n, i).scale(w));
        write!(f, "exp({exponent})*({})", self.body)
    }
}

/// `Δ(e^{w·x}p) = e^{w·x}(|w|²p + 2 w·∇p + Δp)`; the weight is unchanged.
pub fn exp_laplacian(h: &ExpPoly) -> ExpPoly {
    let p = &h.body;
    let drift = dir_derivative(p, &h.weight).expect("weight length checked at construction");
    let body = &(&p.scale(&h.weight_norm_sqr()) + &drift.scale(&rat(2))) + &laplacian(p);
    ExpPoly { weight: h.weight.clone(), body }
}
