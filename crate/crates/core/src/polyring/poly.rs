use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;
use thiserror::Error;

use super::monomial::Exponent;
use super::scalar::{format_rational, rational_to_f64, Coeff, CoeffText, GaussRational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("no binding for occurring variable x{}", .var + 1)]
    MissingBinding { var: usize },
    #[error("binding for x{} has arity {got}, expected {expected}", .var + 1)]
    BindingArity { var: usize, expected: usize, got: usize },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
}

/// Sparse multivariate polynomial with exact coefficients in `C`.
///
/// The term map never stores a zero coefficient, so structural equality is
/// mathematical equality. The field is carried by the type parameter, which
/// makes mixing real and Gaussian polynomials a compile-time error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<C: Coeff = Rational> {
    arity: usize,
    terms: BTreeMap<Exponent, C>,
}

pub type GaussPoly = Poly<GaussRational>;

impl<C: Coeff> Poly<C> {
    pub fn zero(arity: usize) -> Self {
        Self { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, C::one())
    }

    pub fn constant(arity: usize, c: C) -> Self {
        Self::monomial(arity, Exponent::zero(arity), c)
    }

    /// The coordinate function `x_{var+1}`. Panics if `var >= arity`.
    pub fn var(arity: usize, var: usize) -> Self {
        assert!(var < arity, "variable x{} out of range for arity {arity}", var + 1);
        Self::monomial(arity, Exponent::unit(arity, var), C::one())
    }

    pub fn monomial(arity: usize, exp: Exponent, c: C) -> Self {
        assert_eq!(exp.arity(), arity, "exponent length must equal arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { arity, terms }
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Exponent, C)>) -> Self {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            assert_eq!(e.arity(), arity, "exponent length must equal arity");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Exponent::is_constant)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &C)> + ExactSizeIterator {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, e: &Exponent) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading_term(&self) -> Option<(&Exponent, &C)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(e, _)| e.total_degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Exponent::total_degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// Indices of the variables that occur with nonzero exponent.
    pub fn occurring_vars(&self) -> Vec<usize> {
        (0..self.arity)
            .filter(|&v| self.terms.keys().any(|e| e.get(v) > 0))
            .collect()
    }

    fn check_arity(&self, other: &Self) -> Result<(), PolyError> {
        if self.arity == other.arity {
            Ok(())
        } else {
            Err(PolyError::ArityMismatch { left: self.arity, right: other.arity })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.arity));
        }
        let mut acc: HashMap<Exponent, C> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let prod = ca.clone() * cb.clone();
                let e = ea.mul(eb);
                match acc.get_mut(&e) {
                    Some(slot) => *slot = slot.clone() + prod,
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Self { arity: self.arity, terms })
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, a)| (e.clone(), a.clone() * c.clone()))
            .collect();
        Self { arity: self.arity, terms }
    }

    /// `self^n` by repeated squaring; `p^0 = 1`.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut result = Self::one(self.arity);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to `x_{var+1}`.
    pub fn partial(&self, var: usize) -> Result<Self, PolyError> {
        if var >= self.arity {
            return Err(PolyError::VariableOutOfRange { index: var, arity: self.arity });
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let k = e.get(var);
                let lowered = e.lowered(var)?;
                Some((lowered, c.clone() * C::from_rational(Rational::from_integer(k.into()))))
            })
            .collect();
        Ok(Self { arity: self.arity, terms })
    }

    /// Simultaneous substitution `x_v ↦ bindings[v]` into a target ring of
    /// `target_arity` variables.
    ///
    /// Every variable that occurs in `self` must be bound, including the ones
    /// meant to stay put (map them to themselves in the target arity).
    pub fn substitute(
        &self,
        target_arity: usize,
        bindings: &BTreeMap<usize, Poly<C>>,
    ) -> Result<Self, PolyError> {
        for (&v, q) in bindings {
            if v >= self.arity {
                return Err(PolyError::VariableOutOfRange { index: v, arity: self.arity });
            }
            if q.arity != target_arity {
                return Err(PolyError::BindingArity { var: v, expected: target_arity, got: q.arity });
            }
        }
        for v in self.occurring_vars() {
            if !bindings.contains_key(&v) {
                return Err(PolyError::MissingBinding { var: v });
            }
        }

        let mut powers: HashMap<(usize, u32), Poly<C>> = HashMap::new();
        let mut out = Self::zero(target_arity);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target_arity, c.clone());
            for (v, &k) in e.as_slice().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = powers.entry((v, k)).or_insert_with(|| bindings[&v].pow(k));
                term = &term * &*pw;
            }
            for (te, tc) in term.terms {
                out.add_term(te, tc);
            }
        }
        Ok(out)
    }

    /// Substitutes `x_{v+1} ↦ images[v]` for every variable. The target arity
    /// is that of the images.
    pub fn compose(&self, images: &[Poly<C>]) -> Result<Self, PolyError> {
        if images.len() != self.arity {
            return Err(PolyError::PointLength { expected: self.arity, got: images.len() });
        }
        let target = match images.first() {
            Some(q) => q.arity,
            None => return Ok(self.clone()),
        };
        let bindings = images.iter().cloned().enumerate().collect();
        self.substitute(target, &bindings)
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<C, PolyError> {
        if point.len() != self.arity {
            return Err(PolyError::PointLength { expected: self.arity, got: point.len() });
        }
        let mut max_exp = vec![0u32; self.arity];
        for e in self.terms.keys() {
            for (m, &k) in max_exp.iter_mut().zip(e.as_slice()) {
                *m = (*m).max(k);
            }
        }
        let powers: Vec<Vec<Rational>> = point
            .iter()
            .zip(&max_exp)
            .map(|(x, &m)| {
                let mut v = Vec::with_capacity(m as usize + 1);
                v.push(Rational::one());
                for k in 1..=m as usize {
                    v.push(&v[k - 1] * x);
                }
                v
            })
            .collect();
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut m = Rational::one();
            for (v, &k) in e.as_slice().iter().enumerate() {
                if k > 0 {
                    m *= &powers[v][k as usize];
                }
            }
            acc = acc + c.clone() * C::from_rational(m);
        }
        Ok(acc)
    }

    /// Multivariate division by a single divisor under graded-lex order.
    /// Returns `(quotient, remainder)` with `self = quotient·divisor + remainder`
    /// and no term of the remainder divisible by the divisor's leading monomial.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        self.check_arity(divisor)?;
        let (lead_e, lead_c) = divisor.leading_term().ok_or(PolyError::ZeroDivisor)?;
        let mut rest = self.terms.clone();
        let mut quotient = Self::zero(self.arity);
        let mut remainder = Self::zero(self.arity);
        while let Some((e, c)) = rest.pop_last() {
            match e.checked_div(lead_e) {
                Some(shift) => {
                    let factor = c / lead_c.clone();
                    // The leading term cancels by construction; subtract the rest.
                    for (ge, gc) in divisor.terms.iter().rev().skip(1) {
                        let te = ge.mul(&shift);
                        let delta = -(factor.clone() * gc.clone());
                        match rest.remove(&te) {
                            Some(old) => {
                                let s = old + delta;
                                if !s.is_zero() {
                                    rest.insert(te, s);
                                }
                            }
                            None => {
                                rest.insert(te, delta);
                            }
                        }
                    }
                    quotient.add_term(shift, factor);
                }
                None => {
                    remainder.terms.insert(e, c);
                }
            }
        }
        Ok((quotient, remainder))
    }

    /// `Some(q)` with `q·divisor == self` when the divisor divides `self`.
    ///
    /// A single polynomial is a Gröbner basis of the ideal it generates, so a
    /// zero remainder is both necessary and sufficient for divisibility.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Option<Self>, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.arity, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Re-embeds into a larger ring, variable `v` becoming `positions[v]`.
    pub fn embed(&self, target_arity: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.arity);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut v = vec![0; target_arity];
                for (i, &k) in e.as_slice().iter().enumerate() {
                    v[positions[i]] += k;
                }
                (Exponent::new(v), c.clone())
            })
            .collect::<Vec<_>>();
        Self::from_terms(target_arity, terms)
    }
}

impl Poly<Rational> {
    pub fn to_gaussian(&self) -> GaussPoly {
        self.map_coeffs(|c| GaussRational::real(c.clone()))
    }

    /// Floating-point evaluation; used by numeric cross-checks only.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.arity, "point length must equal arity");
        self.terms
            .iter()
            .map(|(e, c)| {
                let m: f64 = e
                    .as_slice()
                    .iter()
                    .zip(point)
                    .map(|(&k, &x)| x.powi(k as i32))
                    .product();
                rational_to_f64(c) * m
            })
            .sum()
    }

    /// Largest absolute coefficient, as a float.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| rational_to_f64(c).abs())
            .fold(0.0, f64::max)
    }
}

impl GaussPoly {
    /// Splits `p = re + i·im` into two real polynomials.
    pub fn re_im(&self) -> (Poly<Rational>, Poly<Rational>) {
        let re = Poly::from_terms(self.arity, self.terms.iter().map(|(e, c)| (e.clone(), c.re.clone())));
        let im = Poly::from_terms(self.arity, self.terms.iter().map(|(e, c)| (e.clone(), c.im.clone())));
        (re, im)
    }

    /// `re + i·im`.
    pub fn from_re_im(re: &Poly<Rational>, im: &Poly<Rational>) -> Result<Self, PolyError> {
        let i = GaussRational::i();
        re.to_gaussian().checked_add(&im.to_gaussian().scale(&i))
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &Exponent) -> fmt::Result {
    let mut first = true;
    for (v, &k) in e.as_slice().iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "x{}", v + 1)?;
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

/// Terms in descending graded-lex order, e.g. `x1^2 - 3/2*x1*x2 + 1`.
/// For real coefficients this is exactly the grammar the parser accepts.
impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            match c.render() {
                CoeffText::Real { negative, magnitude } => {
                    match (idx == 0, negative) {
                        (true, true) => f.write_str("-")?,
                        (true, false) => {}
                        (false, true) => f.write_str(" - ")?,
                        (false, false) => f.write_str(" + ")?,
                    }
                    if e.is_constant() {
                        f.write_str(&format_rational(&magnitude))?;
                    } else {
                        if !magnitude.is_one() {
                            write!(f, "{}*", format_rational(&magnitude))?;
                        }
                        write_monomial(f, e)?;
                    }
                }
                CoeffText::Complex(s) => {
                    if idx > 0 {
                        f.write_str(" + ")?;
                    }
                    f.write_str(&s)?;
                    if !e.is_constant() {
                        f.write_str("*")?;
                        write_monomial(f, e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

// Operator sugar. These panic on arity mismatch; use the `checked_*` methods
// when the arities come from user input.
macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<C: Coeff> $trait<&Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: &Poly<C>) -> Poly<C> {
                self.$checked(rhs).expect(concat!("Poly::", stringify!($method)))
            }
        }
        impl<C: Coeff> $trait<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Coeff> $trait<&Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: &Poly<C>) -> Poly<C> {
                (&self).$method(rhs)
            }
        }
        impl<C: Coeff> $trait<Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        let terms = self.terms.into_iter().map(|(e, c)| (e, -c)).collect();
        Poly { arity: self.arity, terms }
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -self.clone()
    }
}
