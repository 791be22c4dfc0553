//! Exact construction and machine verification of harmonic functions that
//! vanish on prescribed sets: cube skeletons, zero sets of harmonic
//! morphisms, prism and half-strip boundaries.
//!
//! The exact layer ([`polyring`], [`diffops`], [`constructions`],
//! [`geometry`], [`verify`]) works over `Q` and `Q(i)` with no floating
//! point. [`numerics`] provides independent floating-point oracles, and
//! [`cli`] exposes everything through the `hzoo` command.

pub mod cli;
pub mod constructions;
pub mod diffops;
pub mod expr;
pub mod geometry;
pub mod numerics;
pub mod polyring;
pub mod verify;

pub use polyring::{GaussPoly, GaussRational, Poly, Rational};
