//! Non-polynomial harmonic functions: separable trig/hyperbolic products on
//! square prisms, the strip functions, and the explicit half-strip function.

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use super::ConstructionError;
use crate::polyring::{format_rational, rational_to_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TrigKind {
    Sin,
    Cos,
    Sinh,
}

impl TrigKind {
    /// Sign `s` with `f''(a t) = s·a²·f(a t)`.
    fn curvature_sign(self) -> i64 {
        match self {
            TrigKind::Sin | TrigKind::Cos => -1,
            TrigKind::Sinh => 1,
        }
    }

    fn apply(self, t: f64) -> f64 {
        match self {
            TrigKind::Sin => t.sin(),
            TrigKind::Cos => t.cos(),
            TrigKind::Sinh => t.sinh(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            TrigKind::Sin => "sin",
            TrigKind::Cos => "cos",
            TrigKind::Sinh => "sinh",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigFactor {
    pub kind: TrigKind,
    pub frequency: Rational,
    pub var: usize,
}

/// `∏_i kind_i(a_i·x_i)`, one factor per coordinate.
///
/// Every such product is a Laplace eigenfunction with the exactly computable
/// eigenvalue `Σ s_i a_i²`, where `s_i = -1` for sin/cos and `+1` for sinh.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigProduct {
    factors: Vec<TrigFactor>,
}

impl TrigProduct {
    pub fn new(factors: Vec<TrigFactor>) -> Result<Self, ConstructionError> {
        for (i, f) in factors.iter().enumerate() {
            if f.var != i {
                return Err(ConstructionError::FactorOrder { position: i, var: f.var });
            }
            if f.frequency.is_zero() {
                return Err(ConstructionError::ZeroFrequency { index: i });
            }
        }
        Ok(Self { factors })
    }

    /// `sin(a1 x1)·…·sin(a_{d-1} x_{d-1})·sinh(a_d x_d)`, which vanishes on the
    /// boundary of the prism over the box `∏_{i<d} [0, π/a_i]`.
    pub fn prism(a: &[Rational]) -> Result<Self, ConstructionError> {
        if a.len() < 2 {
            return Err(ConstructionError::DimensionTooSmall { min: 2, got: a.len() });
        }
        let last = a.len() - 1;
        let factors = a
            .iter()
            .enumerate()
            .map(|(i, freq)| TrigFactor {
                kind: if i == last { TrigKind::Sinh } else { TrigKind::Sin },
                frequency: freq.clone(),
                var: i,
            })
            .collect();
        Self::new(factors)
    }

    pub fn factors(&self) -> &[TrigFactor] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn eigenvalue(&self) -> Rational {
        self.factors
            .iter()
            .map(|f| &f.frequency * &f.frequency * Rational::from_integer(f.kind.curvature_sign().into()))
            .sum()
    }

    pub fn is_harmonic(&self) -> bool {
        self.eigenvalue().is_zero()
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.factors
            .iter()
            .map(|f| f.kind.apply(rational_to_f64(&f.frequency) * x[f.var]))
            .product()
    }
}

impl fmt::Display for TrigProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, fac) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            let freq = &fac.frequency;
            if freq == &Rational::from_integer(1.into()) {
                write!(f, "{}(x{})", fac.kind.name(), fac.var + 1)?;
            } else if freq.is_negative() || !freq.is_integer() {
                write!(f, "{}(({})*x{})", fac.kind.name(), format_rational(freq), fac.var + 1)?;
            } else {
                write!(f, "{}({}*x{})", fac.kind.name(), format_rational(freq), fac.var + 1)?;
            }
        }
        Ok(())
    }
}

/// `e^{x1}·sin(x2)`: harmonic, zero on the lines `x2 = 0` and `x2 = π`.
pub fn strip_exp_sin(x1: f64, x2: f64) -> f64 {
    x1.exp() * x2.sin()
}

/// `sinh(x1)·sin(x2)`: harmonic, zero on `x2 ∈ {0, π}` and on `x1 = 0`.
pub fn strip_sinh_sin(x1: f64, x2: f64) -> f64 {
    x1.sinh() * x2.sin()
}

/// Point where the half-strip formula's denominator is (numerically) zero.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("half-strip function undefined at ({x1}, {x2}): |denominator| = {denominator:e}")]
pub struct SingularPoint {
    pub x1: f64,
    pub x2: f64,
    pub denominator: f64,
}

/// Explicit harmonic function vanishing on the boundary of the half-strip
/// `{x2 >= 0, -π/2 <= x1 <= π/2}`:
///
/// ```text
///          cos x1 · sinh x2 · R                  cos² x1 · sinh² x2
/// f0 = ----------------------------- · ( 1 + -------------------- )^-1
///       sin x1 · cosh x2 + R                  (sin x1 cosh x2 + R)²
/// ```
///
/// with `R = sqrt(sin² x1 + sinh² x2)`.
///
/// The denominator `sin x1 cosh x2 + R` vanishes on `x1 ≡ -π/2 (mod 2π)` and
/// on the ray `x2 = 0, sin x1 <= 0`; points within `eps_den` of zero are
/// reported as [`SingularPoint`] rather than evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfStrip {
    pub eps_den: f64,
}

impl Default for HalfStrip {
    fn default() -> Self {
        Self { eps_den: Self::DEFAULT_EPS_DEN }
    }
}

impl HalfStrip {
    pub const DEFAULT_EPS_DEN: f64 = 1e-9;

    pub fn eval(&self, x1: f64, x2: f64) -> Result<f64, SingularPoint> {
        let (s, c) = x1.sin_cos();
        let (sh, ch) = (x2.sinh(), x2.cosh());
        let r = (s * s + sh * sh).sqrt();
        let den = s * ch + r;
        if !(den.abs() >= self.eps_den) {
            return Err(SingularPoint { x1, x2, denominator: den });
        }
        let core = c * sh * r / den;
        let correction = 1.0 + (c * c * sh * sh) / (den * den);
        Ok(core / correction)
    }

    /// Adapter for the numeric oracles: `None` on the singular set.
    pub fn sample(&self, x: &[f64]) -> Option<f64> {
        self.eval(x[0], x[1]).ok()
    }
}
