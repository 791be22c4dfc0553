//! Claim checkers. Each returns a [`Certificate`] whose subcases record the
//! individual exact comparisons that were made.

mod certificate;
pub mod linalg;

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::constructions::MorphismPair;
use crate::diffops::{exp_laplacian, gradient, laplacian, ExpPoly};
use crate::geometry::{enumerate_faces, restrict, GeometryError};
use crate::polyring::{format_rational, Exponent, Poly, PolyError, Rational};

pub use certificate::{inputs_digest, Certificate, Subcase, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("divisor is the zero polynomial")]
    ZeroDivisor,
    #[error("family is empty")]
    EmptyFamily,
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("probe {probe} is not on the zero set of the divisor")]
    ProbeOffZeroSet { probe: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn point_text(p: &[Rational]) -> String {
    format!("({})", p.iter().map(format_rational).format(", "))
}

fn check_family_arity(family: &[Poly], arity: usize) -> Result<(), VerifyError> {
    match family.iter().find(|p| p.arity() != arity) {
        Some(p) => Err(VerifyError::Arity { expected: arity, got: p.arity() }),
        None => Ok(()),
    }
}

/// Passes iff `Δp` is the zero polynomial; the witness is the residual.
pub fn check_harmonic(p: &Poly) -> Certificate {
    let residual = laplacian(p);
    let ok = residual.is_zero();
    Certificate::assemble(
        "harmonic",
        &[format!("arity {}", p.arity()), p.to_string()],
        vec![Subcase::new("laplacian == 0", ok, (!ok).then(|| residual.to_string()))],
        (!ok).then(|| residual.to_string()),
    )
}

/// Passes iff `Δh == λ·h` exactly, compared on bodies with the common weight.
pub fn check_eigen(h: &ExpPoly, lambda: &Rational) -> Certificate {
    let lhs = exp_laplacian(h);
    let residual = lhs.body() - &h.body().scale(lambda);
    let ok = residual.is_zero();
    Certificate::assemble(
        "eigen",
        &[h.to_string(), format_rational(lambda)],
        vec![Subcase::new(
            format!("laplacian == {} * h", format_rational(lambda)),
            ok,
            (!ok).then(|| residual.to_string()),
        )],
        (!ok).then(|| residual.to_string()),
    )
}

/// Passes iff `p` restricts to zero on every k-face of the centred unit cube.
pub fn check_skeleton_vanishing(p: &Poly, d: usize, k: usize) -> Result<Certificate, VerifyError> {
    if p.arity() != d {
        return Err(VerifyError::Arity { expected: d, got: p.arity() });
    }
    let faces = enumerate_faces(d, k)?;
    let subcases = faces
        .par_iter()
        .map(|face| {
            let r = restrict(p, face).expect("arity checked above");
            let ok = r.is_zero();
            Subcase::new(face.to_string(), ok, (!ok).then(|| r.to_string()))
        })
        .collect::<Vec<_>>();
    Ok(Certificate::assemble(
        "skeleton-vanishing",
        &[p.to_string(), format!("d={d}"), format!("k={k}")],
        subcases,
        None,
    ))
}

/// Passes iff `divisor` divides every member exactly; each subcase records
/// the quotient's degree.
pub fn check_divides_family(divisor: &Poly, family: &[Poly]) -> Result<Certificate, VerifyError> {
    if divisor.is_zero() {
        return Err(VerifyError::ZeroDivisor);
    }
    check_family_arity(family, divisor.arity())?;
    let subcases = family
        .par_iter()
        .enumerate()
        .map(|(i, member)| {
            let label = format!("member[{i}]");
            match member.exact_divide(divisor).expect("nonzero divisor, equal arity") {
                Some(q) => {
                    let deg = q.total_degree().map_or("-inf".to_string(), |d| d.to_string());
                    Subcase::new(label, true, Some(format!("quotient degree {deg}")))
                }
                None => Subcase::new(label, false, Some("nonzero remainder".into())),
            }
        })
        .collect::<Vec<_>>();
    let mut inputs = vec![divisor.to_string()];
    inputs.extend(family.iter().map(Poly::to_string));
    Ok(Certificate::assemble("divides-family", &inputs, subcases, None))
}

/// Total degrees of the family members (`None` for a zero member).
pub fn degree_sequence(family: &[Poly]) -> Vec<Option<u32>> {
    family.iter().map(Poly::total_degree).collect()
}

/// Coefficient matrix of the family over the union of occurring monomials.
pub fn coefficient_matrix(family: &[Poly]) -> Vec<Vec<Rational>> {
    let monomials: BTreeSet<&Exponent> = family.iter().flat_map(|p| p.terms().map(|(e, _)| e)).collect();
    family
        .iter()
        .map(|p| monomials.iter().map(|e| p.coeff(e)).collect())
        .collect()
}

/// Passes iff the coefficient vectors have full rank over `Q`.
pub fn check_linear_independence(family: &[Poly]) -> Result<Certificate, VerifyError> {
    let first = family.first().ok_or(VerifyError::EmptyFamily)?;
    check_family_arity(family, first.arity())?;
    let r = linalg::rank(&coefficient_matrix(family));
    let degrees = degree_sequence(family)
        .iter()
        .map(|d| d.map_or("-inf".to_string(), |d| d.to_string()))
        .join(", ");
    let ok = r == family.len();
    let inputs: Vec<String> = family.iter().map(Poly::to_string).collect();
    Ok(Certificate::assemble(
        "linear-independence",
        &inputs,
        vec![Subcase::new(
            "full rank",
            ok,
            Some(format!("rank {r} of {}; degrees ({degrees})", family.len())),
        )],
        None,
    ))
}

/// `|∇φ1|² - |∇φ2|²` and `∇φ1·∇φ2`; both vanish for a horizontally weakly
/// conformal map.
pub fn conformality_defects(m: &MorphismPair) -> (Poly, Poly) {
    let g1 = gradient(&m.phi1);
    let g2 = gradient(&m.phi2);
    let n = m.arity();
    let dot = |a: &[Poly], b: &[Poly]| {
        a.iter().zip(b).fold(Poly::zero(n), |acc, (x, y)| &acc + &(x * y))
    };
    (&dot(&g1, &g1) - &dot(&g2, &g2), dot(&g1, &g2))
}

/// Passes iff both components are harmonic and the map is horizontally
/// weakly conformal, all as exact polynomial identities.
pub fn check_conformality(m: &MorphismPair) -> Certificate {
    let (norm_gap, inner) = conformality_defects(m);
    let lap1 = laplacian(&m.phi1);
    let lap2 = laplacian(&m.phi2);
    let case = |label: &str, p: &Poly| Subcase::new(label, p.is_zero(), (!p.is_zero()).then(|| p.to_string()));
    let subcases = vec![
        case("laplacian(phi1) == 0", &lap1),
        case("laplacian(phi2) == 0", &lap2),
        case("|grad phi1|^2 - |grad phi2|^2 == 0", &norm_gap),
        case("grad phi1 . grad phi2 == 0", &inner),
    ];
    Certificate::assemble("conformality", &[m.phi1.to_string(), m.phi2.to_string()], subcases, None)
}

/// Builds `p2(φ1, φ2)` and passes iff it is harmonic.
pub fn check_composition(p2: &Poly, m: &MorphismPair) -> Result<Certificate, VerifyError> {
    if p2.arity() != 2 {
        return Err(VerifyError::Arity { expected: 2, got: p2.arity() });
    }
    let composed = p2.compose(&[m.phi1.clone(), m.phi2.clone()])?;
    let residual = laplacian(&composed);
    let ok = residual.is_zero();
    Ok(Certificate::assemble(
        "composition",
        &[p2.to_string(), m.phi1.to_string(), m.phi2.to_string()],
        vec![Subcase::new(
            "laplacian(p2 o phi) == 0",
            ok,
            (!ok).then(|| residual.to_string()),
        )],
        None,
    ))
}

/// Passes iff every family member vanishes at every probe. All probes must
/// lie on the zero set of `divisor`.
pub fn common_zero_witness(
    divisor: &Poly,
    family: &[Poly],
    probes: &[Vec<Rational>],
) -> Result<Certificate, VerifyError> {
    check_family_arity(family, divisor.arity())?;
    for probe in probes {
        let v = divisor.eval(probe)?;
        if !num_traits::Zero::is_zero(&v) {
            return Err(VerifyError::ProbeOffZeroSet { probe: point_text(probe) });
        }
    }
    let subcases = family
        .par_iter()
        .enumerate()
        .map(|(i, member)| {
            let miss = probes.iter().find(|probe| {
                !num_traits::Zero::is_zero(&member.eval(probe).expect("probe length checked"))
            });
            match miss {
                None => Subcase::new(format!("member[{i}]"), true, Some(format!("{} probes", probes.len()))),
                Some(p) => Subcase::new(format!("member[{i}]"), false, Some(format!("nonzero at {}", point_text(p)))),
            }
        })
        .collect::<Vec<_>>();
    let mut inputs = vec![divisor.to_string()];
    inputs.extend(family.iter().map(Poly::to_string));
    inputs.extend(probes.iter().map(|p| point_text(p)));
    Ok(Certificate::assemble("common-zero", &inputs, subcases, None))
}
