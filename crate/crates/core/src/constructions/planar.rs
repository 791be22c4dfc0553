use crate::polyring::{GaussPoly, GaussRational, Poly};

/// Real and imaginary parts of `∏_j (z - p_j)` with `z = x1 + i·x2`.
///
/// Both parts are harmonic in the plane and vanish together at every `p_j`.
/// An empty point set yields the constant `1`.
pub fn planar_vanisher(points: &[GaussRational]) -> (Poly, Poly) {
    let z = &GaussPoly::var(2, 0) + &GaussPoly::var(2, 1).scale(&GaussRational::i());
    points
        .iter()
        .fold(GaussPoly::one(2), |acc, p| &acc * &(&z - &GaussPoly::constant(2, p.clone())))
        .re_im()
}
