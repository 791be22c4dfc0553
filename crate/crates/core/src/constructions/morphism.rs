//! Polynomial harmonic morphisms `R^m -> R^2` and the harmonic families they
//! generate.

use super::ConstructionError;
use crate::polyring::{rat, GaussPoly, GaussRational, Poly, Rational};

/// A map `x ↦ (φ1(x), φ2(x))` into the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismPair {
    pub phi1: Poly,
    pub phi2: Poly,
}

impl MorphismPair {
    pub fn new(phi1: Poly, phi2: Poly) -> Result<Self, ConstructionError> {
        if phi1.arity() != phi2.arity() {
            return Err(ConstructionError::ArityMismatch {
                expected: phi1.arity(),
                got: phi2.arity(),
            });
        }
        Ok(Self { phi1, phi2 })
    }

    pub fn arity(&self) -> usize {
        self.phi1.arity()
    }

    /// `φ1 + i·φ2`.
    pub fn complexified(&self) -> GaussPoly {
        GaussPoly::from_re_im(&self.phi1, &self.phi2).expect("equal arity")
    }
}

/// `φ1 = x1² - x2² + … + x_{2n-1}² - x_{2n}²`, `φ2 = 2(x1x2 + … + x_{2n-1}x_{2n})`,
/// i.e. `Σ_j (x_{2j-1} + i x_{2j})²` split into real and imaginary parts.
pub fn quadratic_morphism(n: usize) -> Result<MorphismPair, ConstructionError> {
    if n < 1 {
        return Err(ConstructionError::DimensionTooSmall { min: 1, got: n });
    }
    let m = 2 * n;
    let mut phi1 = Poly::zero(m);
    let mut phi2 = Poly::zero(m);
    for j in 0..n {
        let a = Poly::var(m, 2 * j);
        let b = Poly::var(m, 2 * j + 1);
        phi1 = &phi1 + &(&a.pow(2) - &b.pow(2));
        phi2 = &phi2 + &(&a * &b).scale(&rat(2));
    }
    MorphismPair::new(phi1, phi2)
}

/// `P_k = Re (φ1 + iφ2)^{2k+1}` for `k = 0..=k_max`, with `(φ1, φ2)` the
/// quadratic morphism on `R^{2n}`. Each member has degree `4k+2`, is harmonic
/// and is divisible by `φ1`.
pub fn morphism_power_family(n: usize, k_max: usize) -> Result<Vec<Poly>, ConstructionError> {
    let pair = quadratic_morphism(n)?;
    let base = pair.complexified();
    let square = &base * &base;
    let mut power = base;
    let mut family = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        if k > 0 {
            power = &power * &square;
        }
        family.push(power.re_im().0);
    }
    Ok(family)
}

/// Isotropic vector `(1 - G, i(1 + G), -2g_1, …, -2g_L)` with `G = Σ g_j²`.
/// Its components satisfy `Σ ξ_j² = 0` identically for any input.
pub fn null_vector_ansatz(g: &[GaussPoly]) -> Result<Vec<GaussPoly>, ConstructionError> {
    let first = g.first().ok_or(ConstructionError::EmptyAnsatz)?;
    let arity = first.arity();
    if let Some(bad) = g.iter().find(|p| p.arity() != arity) {
        return Err(ConstructionError::ArityMismatch { expected: arity, got: bad.arity() });
    }
    let sum_sq = g.iter().fold(GaussPoly::zero(arity), |acc, p| &acc + &(p * p));
    let one = GaussPoly::one(arity);
    let mut xi = Vec::with_capacity(g.len() + 2);
    xi.push(&one - &sum_sq);
    xi.push((&one + &sum_sq).scale(&GaussRational::i()));
    let minus_two = GaussRational::real(rat(-2));
    xi.extend(g.iter().map(|p| p.scale(&minus_two)));
    Ok(xi)
}

/// `Σ_j ξ_j(z)·x_j` on `R^m` (m odd, `m >= 5`) with `z = x_{m-1} + i·x_m` and
/// `ξ` from [`null_vector_ansatz`]; `g` has `m - 4` univariate entries so
/// that `ξ` has the required `m - 2` components.
pub fn odd_morphism(m: usize, g: &[GaussPoly]) -> Result<MorphismPair, ConstructionError> {
    if m < 5 || m % 2 == 0 {
        return Err(ConstructionError::BadOddDimension(m));
    }
    if g.len() != m - 4 {
        return Err(ConstructionError::AnsatzLength { expected: m - 4, got: g.len() });
    }
    if let Some(bad) = g.iter().find(|p| p.arity() != 1) {
        return Err(ConstructionError::ArityMismatch { expected: 1, got: bad.arity() });
    }
    let xi = null_vector_ansatz(g)?;
    let z = &GaussPoly::var(m, m - 2)
        + &GaussPoly::var(m, m - 1).scale(&GaussRational::i());
    let mut total = GaussPoly::zero(m);
    for (j, component) in xi.iter().enumerate() {
        let in_z = component.compose(std::slice::from_ref(&z))?;
        total = &total + &(&in_z * &GaussPoly::var(m, j));
    }
    let (phi1, phi2) = total.re_im();
    MorphismPair::new(phi1, phi2)
}

/// Univariate polynomial `Σ c_k z^k` from real coefficients, lowest degree first.
pub fn univariate(coeffs: &[Rational]) -> GaussPoly {
    let z = GaussPoly::var(1, 0);
    coeffs.iter().enumerate().fold(GaussPoly::zero(1), |acc, (k, c)| {
        &acc + &z.pow(k as u32).scale(&GaussRational::real(c.clone()))
    })
}

/// `Re (u + i v)^n` as a polynomial in `(u, v)`.
pub fn planar_power(n: u32) -> Poly {
    let w = &GaussPoly::var(2, 0) + &GaussPoly::var(2, 1).scale(&GaussRational::i());
    w.pow(n).re_im().0
}
