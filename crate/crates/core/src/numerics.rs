//! Floating-point oracles, independent of the exact algebra: a five-point
//! (2d+1-point) finite-difference Laplacian, boundary-vanishing scans and a
//! nodal-set point sampler.
//!
//! Scalar fields are closures `Fn(&[f64]) -> Option<f64>`; `None` marks a point
//! outside the function's domain (e.g. the half-strip formula's singular set).

use std::io::{self, Write};

use rayon::prelude::*;
use thiserror::Error;

use crate::polyring::{rational_to_f64, Poly};

/// Boundary tolerance used by the reports.
pub const TOL_BOUNDARY: f64 = 1e-10;
/// Finite-difference residual bound for harmonic functions at [`FD_STEP`].
pub const FD_RESIDUAL_BOUND: f64 = 1e-5;
pub const FD_STEP: f64 = 1e-3;
/// Step used for convergence-order checks. Large enough that truncation error
/// dominates rounding error at both `h` and `h/2`.
pub const RICHARDSON_STEP: f64 = 1e-2;
/// Accepted range for `residual(h) / residual(h/2)` (second order gives 4).
pub const RICHARDSON_RANGE: (f64, f64) = (3.5, 4.5);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("sample at {point:?} is undefined or non-finite")]
    InvalidSample { point: Vec<f64> },
    #[error("step must be positive, got {0}")]
    BadStep(f64),
    #[error("invalid grid: {0}")]
    BadGrid(String),
    #[error("need at least 2 samples per segment, got {0}")]
    TooFewSamples(usize),
}

fn sample<F>(f: &F, x: &[f64]) -> Result<f64, NumericError>
where
    F: Fn(&[f64]) -> Option<f64>,
{
    match f(x) {
        Some(v) if v.is_finite() => Ok(v),
        _ => Err(NumericError::InvalidSample { point: x.to_vec() }),
    }
}

/// `Σ_i (f(x + h e_i) - 2 f(x) + f(x - h e_i)) / h²`.
pub fn fd_laplacian<F>(f: &F, x: &[f64], h: f64) -> Result<f64, NumericError>
where
    F: Fn(&[f64]) -> Option<f64>,
{
    if !(h > 0.0) {
        return Err(NumericError::BadStep(h));
    }
    let centre = sample(f, x)?;
    let mut y = x.to_vec();
    let mut total = 0.0;
    for i in 0..x.len() {
        y[i] = x[i] + h;
        let fwd = sample(f, &y)?;
        y[i] = x[i] - h;
        let bwd = sample(f, &y)?;
        y[i] = x[i];
        total += (fwd - 2.0 * centre + bwd) / (h * h);
    }
    Ok(total)
}

/// `fd_laplacian(h) / fd_laplacian(h/2)`; close to 4 for a smooth harmonic
/// function whose residual is pure truncation error.
pub fn richardson_ratio<F>(f: &F, x: &[f64], h: f64) -> Result<f64, NumericError>
where
    F: Fn(&[f64]) -> Option<f64>,
{
    Ok(fd_laplacian(f, x, h)? / fd_laplacian(f, x, h / 2.0)?)
}

/// Adapter turning a real polynomial into a sampled field.
pub fn poly_field(p: &Poly) -> impl Fn(&[f64]) -> Option<f64> + Sync + '_ {
    move |x| Some(p.eval_f64(x))
}

fn coeff_l1(p: &Poly) -> f64 {
    p.terms().map(|(_, c)| rational_to_f64(c).abs()).sum()
}

/// A priori bound on `|fd_laplacian(p, x, h) - Δp(x)|` for `x` in `[-1, 1]^d`.
///
/// Truncation is `h²/12 · Σ_i |∂⁴_i p(ξ_i)|` and each sample carries a
/// rounding error proportional to the coefficient 1-norm; both are bounded
/// with `|x^e| <= (1 + h)^deg` on the stencil. A polynomial has "moderate
/// size" for the residual check when this bound is at most
/// [`FD_RESIDUAL_BOUND`] at [`FD_STEP`].
pub fn fd_error_bound(p: &Poly, h: f64) -> f64 {
    let d = p.arity();
    let deg = p.total_degree().unwrap_or(0);
    let reach = (1.0 + h).powi(deg as i32);
    let fourth: f64 = (0..d)
        .map(|i| {
            let mut q = p.clone();
            for _ in 0..4 {
                q = q.partial(i).expect("index below arity");
            }
            coeff_l1(&q)
        })
        .sum();
    let gamma = (deg as usize + d + p.num_terms() + 2) as f64 * f64::EPSILON;
    let rounding = 2.0 * 4.0 * d as f64 * gamma * coeff_l1(p) * reach / (h * h);
    h * h / 12.0 * fourth * reach + rounding
}

/// Straight boundary piece from `from` to `to`.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub label: String,
    pub from: Vec<f64>,
    pub to: Vec<f64>,
}

impl Segment {
    pub fn new(label: impl Into<String>, from: Vec<f64>, to: Vec<f64>) -> Self {
        assert_eq!(from.len(), to.len());
        Self { label: label.into(), from, to }
    }

    /// `n` evenly spaced points including both ends.
    pub fn points(&self, n: usize) -> impl Iterator<Item = Vec<f64>> + '_ {
        (0..n).map(move |j| {
            let t = j as f64 / (n - 1) as f64;
            self.from.iter().zip(&self.to).map(|(a, b)| a + t * (b - a)).collect()
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryReport {
    pub max_abs: f64,
    pub evaluated: usize,
    pub skipped: usize,
    pub tol: f64,
    pub passed: bool,
}

/// Samples `f` at `n` points on each segment. Undefined samples are skipped
/// and counted. Passes iff at least one sample was evaluated and every
/// evaluated `|f|` is at most `tol`.
pub fn boundary_scan<F>(f: &F, segments: &[Segment], n: usize, tol: f64) -> Result<BoundaryReport, NumericError>
where
    F: Fn(&[f64]) -> Option<f64>,
{
    if n < 2 {
        return Err(NumericError::TooFewSamples(n));
    }
    let mut max_abs: f64 = 0.0;
    let mut evaluated = 0;
    let mut skipped = 0;
    for seg in segments {
        for p in seg.points(n) {
            match f(&p) {
                Some(v) if v.is_finite() => {
                    evaluated += 1;
                    max_abs = max_abs.max(v.abs());
                }
                _ => skipped += 1,
            }
        }
    }
    Ok(BoundaryReport { max_abs, evaluated, skipped, tol, passed: evaluated > 0 && max_abs <= tol })
}

/// Axis-aligned box sampled at `resolution` points per axis; `h` is the
/// stencil step for derivative checks.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub resolution: usize,
    pub h: f64,
}

pub const MAX_GRID_DIM: usize = 4;

impl GridSpec {
    pub fn cube(d: usize, lo: f64, hi: f64, resolution: usize) -> Self {
        Self { lo: vec![lo; d], hi: vec![hi; d], resolution, h: FD_STEP }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn validate(&self) -> Result<(), NumericError> {
        let bad = |m: &str| Err(NumericError::BadGrid(m.to_string()));
        if self.lo.len() != self.hi.len() || self.lo.is_empty() {
            return bad("corner dimensions differ or are empty");
        }
        if self.dim() > MAX_GRID_DIM {
            return bad("dimension above 4");
        }
        if self.lo.iter().zip(&self.hi).any(|(a, b)| !(a < b)) {
            return bad("lo must be below hi in every coordinate");
        }
        if self.resolution < 2 {
            return bad("resolution must be at least 2");
        }
        if !(self.h > 0.0) {
            return bad("step must be positive");
        }
        Ok(())
    }

    pub fn cell_width(&self, axis: usize) -> f64 {
        (self.hi[axis] - self.lo[axis]) / (self.resolution - 1) as f64
    }

    pub fn coord(&self, axis: usize, i: usize) -> f64 {
        if i + 1 == self.resolution {
            self.hi[axis]
        } else {
            self.lo[axis] + i as f64 * self.cell_width(axis)
        }
    }

    pub fn node_count(&self) -> usize {
        self.resolution.pow(self.dim() as u32)
    }

    /// Multi-index of a flat node number; the first axis varies slowest.
    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim()];
        for slot in idx.iter_mut().rev() {
            *slot = flat % self.resolution;
            flat /= self.resolution;
        }
        idx
    }

    fn stride(&self, axis: usize) -> usize {
        self.resolution.pow((self.dim() - 1 - axis) as u32)
    }

    pub fn point(&self, idx: &[usize]) -> Vec<f64> {
        idx.iter().enumerate().map(|(a, &i)| self.coord(a, i)).collect()
    }
}

/// Where a nodal point came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodalSource {
    /// Grid node where the function is exactly zero.
    Node { index: Vec<usize> },
    /// Midpoint of the edge from `index` to `index + e_axis`.
    Edge { index: Vec<usize>, axis: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct NodalPoint {
    pub coords: Vec<f64>,
    pub source: NodalSource,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NodalCloud {
    pub function_id: String,
    pub grid: GridSpec,
    pub points: Vec<NodalPoint>,
}

/// Zero is counted as positive.
fn positive(v: f64) -> bool {
    v >= 0.0
}

/// Scans every axis-aligned grid edge and emits the midpoints of edges whose
/// endpoint values have opposite signs, plus every node where the value is
/// exactly zero. Output is ordered lexicographically by node multi-index,
/// with a node's own point before its edges (by axis).
pub fn nodal_sample<F>(f: &F, grid: &GridSpec, function_id: &str) -> Result<NodalCloud, NumericError>
where
    F: Fn(&[f64]) -> Option<f64> + Sync,
{
    grid.validate()?;
    let values: Vec<Option<f64>> = (0..grid.node_count())
        .into_par_iter()
        .map(|flat| f(&grid.point(&grid.multi_index(flat))).filter(|v| v.is_finite()))
        .collect();

    let points = (0..grid.node_count())
        .into_par_iter()
        .flat_map_iter(|flat| {
            let idx = grid.multi_index(flat);
            let mut out = Vec::new();
            let Some(here) = values[flat] else {
                return out;
            };
            if here == 0.0 {
                out.push(NodalPoint { coords: grid.point(&idx), source: NodalSource::Node { index: idx.clone() } });
            }
            for axis in 0..grid.dim() {
                if idx[axis] + 1 >= grid.resolution {
                    continue;
                }
                let Some(there) = values[flat + grid.stride(axis)] else {
                    continue;
                };
                if positive(here) != positive(there) {
                    let mut coords = grid.point(&idx);
                    coords[axis] += 0.5 * grid.cell_width(axis);
                    out.push(NodalPoint { coords, source: NodalSource::Edge { index: idx.clone(), axis } });
                }
            }
            out
        })
        .collect();

    Ok(NodalCloud { function_id: function_id.to_string(), grid: grid.clone(), points })
}

/// Re-evaluates `f` at the provenance of every emitted point and confirms the
/// recorded sign change (or exact zero).
pub fn cloud_is_sound<F>(f: &F, cloud: &NodalCloud) -> bool
where
    F: Fn(&[f64]) -> Option<f64>,
{
    let grid = &cloud.grid;
    cloud.points.iter().all(|p| match &p.source {
        NodalSource::Node { index } => f(&grid.point(index)) == Some(0.0),
        NodalSource::Edge { index, axis } => {
            let mut next = index.clone();
            next[*axis] += 1;
            match (f(&grid.point(index)), f(&grid.point(&next))) {
                (Some(a), Some(b)) => positive(a) != positive(b),
                _ => false,
            }
        }
    })
}

/// CSV with header `x1,...,xd`, one point per row, shortest round-trip
/// decimal form, LF line endings.
pub fn write_csv<W: Write>(cloud: &NodalCloud, mut w: W) -> io::Result<()> {
    let d = cloud.grid.dim();
    let header: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
    w.write_all(header.join(",").as_bytes())?;
    w.write_all(b"\n")?;
    for p in &cloud.points {
        let row: Vec<String> = p.coords.iter().map(|c| format!("{c:?}")).collect();
        w.write_all(row.join(",").as_bytes())?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub h: f64,
    pub bound: f64,
    pub max_residual: f64,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub evaluated: usize,
    pub skipped: usize,
    pub passed: bool,
}

/// At every point: `|fd_laplacian(h)|` and the Richardson ratio at
/// [`RICHARDSON_STEP`]. Points whose stencil leaves the domain are skipped
/// and counted. Passes iff something was evaluated, every residual is at
/// most `bound` and every ratio lies in [`RICHARDSON_RANGE`].
pub fn residual_scan<F>(f: &F, points: &[Vec<f64>], h: f64, bound: f64) -> Result<ResidualReport, NumericError>
where
    F: Fn(&[f64]) -> Option<f64> + Sync,
{
    if !(h > 0.0) {
        return Err(NumericError::BadStep(h));
    }
    let samples: Vec<Option<(f64, f64)>> = points
        .par_iter()
        .map(|x| {
            let r = fd_laplacian(f, x, h).ok()?;
            let q = richardson_ratio(f, x, RICHARDSON_STEP).ok()?;
            Some((r.abs(), q))
        })
        .collect();
    let mut rep = ResidualReport {
        h,
        bound,
        max_residual: 0.0,
        min_ratio: f64::INFINITY,
        max_ratio: f64::NEG_INFINITY,
        evaluated: 0,
        skipped: 0,
        passed: false,
    };
    for s in samples {
        match s {
            Some((r, q)) => {
                rep.evaluated += 1;
                rep.max_residual = rep.max_residual.max(r);
                rep.min_ratio = rep.min_ratio.min(q);
                rep.max_ratio = rep.max_ratio.max(q);
            }
            None => rep.skipped += 1,
        }
    }
    let (lo, hi) = RICHARDSON_RANGE;
    rep.passed = rep.evaluated > 0 && rep.max_residual <= bound && rep.min_ratio >= lo && rep.max_ratio <= hi;
    Ok(rep)
}

/// Radical inverse of `i` in base `b` (van der Corput); deterministic
/// low-discrepancy samples for the numeric checks.
pub fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut out = 0.0;
    let mut scale = inv;
    while i > 0 {
        out += (i % base) as f64 * scale;
        i /= base;
        scale *= inv;
    }
    out
}

/// `n` Halton points in the box `[lo, hi]` (dimension ≤ 6).
pub fn halton_points(n: usize, lo: &[f64], hi: &[f64]) -> Vec<Vec<f64>> {
    const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
    assert!(lo.len() <= PRIMES.len() && lo.len() == hi.len());
    (1..=n as u64)
        .map(|i| {
            lo.iter()
                .zip(hi)
                .zip(PRIMES)
                .map(|((a, b), p)| a + (b - a) * radical_inverse(i, p))
                .collect()
        })
        .collect()
}
