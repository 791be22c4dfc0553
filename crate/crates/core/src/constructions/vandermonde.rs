use std::collections::BTreeMap;

use num_traits::One;

use super::ConstructionError;
use crate::diffops::ExpPoly;
use crate::polyring::{Poly, Rational};

fn check_dim(d: usize) -> Result<(), ConstructionError> {
    if d < 2 {
        Err(ConstructionError::DimensionTooSmall { min: 2, got: d })
    } else {
        Ok(())
    }
}

/// `∏_{i<j} (y_i - y_j)` in `d` variables.
pub fn vandermonde(d: usize) -> Result<Poly, ConstructionError> {
    check_dim(d)?;
    let mut v = Poly::one(d);
    for i in 0..d {
        for j in i + 1..d {
            v = &v * &(&Poly::var(d, i) - &Poly::var(d, j));
        }
    }
    Ok(v)
}

/// `∏_{i<j} (x_i² - x_j²)`: the Vandermonde polynomial in the squared
/// coordinates. Harmonic, and zero wherever two coordinates agree up to sign,
/// in particular on the codimension-2 skeleton of the centred unit cube.
pub fn squared_vandermonde(d: usize) -> Result<Poly, ConstructionError> {
    let v = vandermonde(d)?;
    let squares: BTreeMap<usize, Poly> = (0..d).map(|i| (i, Poly::var(d, i).pow(2))).collect();
    Ok(v.substitute(d, &squares)?)
}

/// `x1·…·xd·∏_{i<j}(x_i² - x_j²)`, odd in every coordinate.
pub fn odd_squared_vandermonde(d: usize) -> Result<Poly, ConstructionError> {
    let f = squared_vandermonde(d)?;
    let coords = (0..d).fold(Poly::one(d), |acc, i| &acc * &Poly::var(d, i));
    Ok(&coords * &f)
}

/// `e^{x1+…+xd}·∏_{i<j}(x_i - x_j)`, a Laplace eigenfunction with eigenvalue `d`.
pub fn exp_vandermonde(d: usize) -> Result<ExpPoly, ConstructionError> {
    let body = vandermonde(d)?;
    Ok(ExpPoly::new(vec![Rational::one(); d], body)?)
}
