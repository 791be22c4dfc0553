//! Faces of the centred unit cube `Q_d = [-1/2, 1/2]^d`.
//!
//! A k-face pins `d - k` coordinates to `±1/2` and leaves the rest free; the
//! k-skeleton is the union of all k-faces. Faces are closed, so neighbouring
//! faces share their boundaries.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::Signed;
use thiserror::Error;

use crate::polyring::{rat, ratio, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("face dimension {k} out of range 0..={d}")]
    FaceDimension { d: usize, k: usize },
    #[error("polynomial arity {got} does not match cube dimension {expected}")]
    Arity { expected: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    dim: usize,
    fixed: BTreeMap<usize, Rational>,
}

impl Face {
    /// Face pinning `x_{i+1} = value` for each `(i, value)`. Every value must be `±1/2`.
    pub fn new(dim: usize, fixed: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let fixed: BTreeMap<_, _> = fixed.into_iter().collect();
        let half = ratio(1, 2);
        assert!(
            fixed.iter().all(|(&i, v)| i < dim && v.abs() == half),
            "fixed coordinates must be in range and equal to ±1/2"
        );
        Self { dim, fixed }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the face itself.
    pub fn face_dim(&self) -> usize {
        self.dim - self.fixed.len()
    }

    pub fn fixed(&self) -> &BTreeMap<usize, Rational> {
        &self.fixed
    }

    pub fn free(&self) -> Vec<usize> {
        (0..self.dim).filter(|i| !self.fixed.contains_key(i)).collect()
    }

    /// Embeds free coordinates into a full point of `R^d`.
    pub fn lift(&self, free_coords: &[Rational]) -> Vec<Rational> {
        let mut it = free_coords.iter();
        (0..self.dim)
            .map(|i| match self.fixed.get(&i) {
                Some(v) => v.clone(),
                None => it.next().expect("one coordinate per free variable").clone(),
            })
            .collect()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.fixed.is_empty() {
            return f.write_str("{}");
        }
        let parts = self
            .fixed
            .iter()
            .map(|(i, v)| format!("x{}={}", i + 1, crate::polyring::format_rational(v)));
        write!(f, "{{{}}}", parts.format(", "))
    }
}

/// All `C(d, k)·2^(d-k)` k-faces of `Q_d`, ordered by fixed index set and
/// then by sign pattern (`-1/2` before `+1/2`).
pub fn enumerate_faces(d: usize, k: usize) -> Result<Vec<Face>, GeometryError> {
    if k > d {
        return Err(GeometryError::FaceDimension { d, k });
    }
    let signs = [ratio(-1, 2), ratio(1, 2)];
    let mut faces = Vec::new();
    for fixed in (0..d).combinations(d - k) {
        for pattern in std::iter::repeat_n(signs.iter(), d - k).multi_cartesian_product() {
            faces.push(Face::new(d, fixed.iter().copied().zip(pattern.into_iter().cloned())));
        }
    }
    Ok(faces)
}

/// `p` with the face's fixed coordinates substituted; the result lives in the
/// free variables, renumbered consecutively.
pub fn restrict(p: &Poly, face: &Face) -> Result<Poly, GeometryError> {
    if p.arity() != face.dim {
        return Err(GeometryError::Arity { expected: face.dim, got: p.arity() });
    }
    let free = face.free();
    let target = free.len();
    let mut bindings = BTreeMap::new();
    for (i, v) in &face.fixed {
        bindings.insert(*i, Poly::constant(target, v.clone()));
    }
    for (slot, &i) in free.iter().enumerate() {
        bindings.insert(i, Poly::var(target, slot));
    }
    Ok(p.substitute(target, &bindings).expect("every variable is bound"))
}

/// `n` distinct rational points of the face. Free coordinates take values on
/// the evenly spaced grid `-1/2 + j/(n-1)`; the `r`-th free coordinate of the
/// `j`-th point uses grid index `j·(r+1) mod n`. For `n = 1` this is the
/// face centroid.
pub fn sample_face(face: &Face, n: usize) -> Vec<Vec<Rational>> {
    let grid: Vec<Rational> = if n <= 1 {
        vec![rat(0)]
    } else {
        (0..n).map(|j| ratio(-1, 2) + ratio(j as i64, (n - 1) as i64)).collect()
    };
    let free = face.free();
    (0..n.max(1))
        .map(|j| {
            let coords: Vec<Rational> = (0..free.len())
                .map(|r| grid[(j * (r + 1)) % grid.len()].clone())
                .collect();
            face.lift(&coords)
        })
        .collect()
}
