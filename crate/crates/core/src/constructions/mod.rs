//! Generators for the explicit harmonic functions: Vandermonde-type
//! polynomials vanishing on cube skeletons, polynomial harmonic morphisms and
//! the families they divide, separable prism products, and the planar and
//! half-strip vanishers.

mod morphism;
mod planar;
mod transcendental;
mod vandermonde;

use thiserror::Error;

use crate::diffops::DiffError;
use crate::polyring::PolyError;

pub use morphism::{
    morphism_power_family, null_vector_ansatz, odd_morphism, planar_power, quadratic_morphism,
    univariate, MorphismPair,
};
pub use planar::planar_vanisher;
pub use transcendental::{
    strip_exp_sin, strip_sinh_sin, HalfStrip, SingularPoint, TrigFactor, TrigKind, TrigProduct,
};
pub use vandermonde::{exp_vandermonde, odd_squared_vandermonde, squared_vandermonde, vandermonde};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("dimension {got} is below the minimum {min}")]
    DimensionTooSmall { min: usize, got: usize },
    #[error("odd-dimensional morphism needs an odd dimension >= 5, got {0}")]
    BadOddDimension(usize),
    #[error("ansatz needs {expected} generating polynomials, got {got}")]
    AnsatzLength { expected: usize, got: usize },
    #[error("ansatz needs at least one generating polynomial")]
    EmptyAnsatz,
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("frequency of factor {index} is zero")]
    ZeroFrequency { index: usize },
    #[error("factor at position {position} acts on x{}", .var + 1)]
    FactorOrder { position: usize, var: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Diff(#[from] DiffError),
}
