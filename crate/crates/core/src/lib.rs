//! Exact wall-and-chamber decompositions, divisor-cone calculus and
//! cohomology-vanishing bookkeeping for moduli spaces of parabolic bundles
//! of rank `r` and degree `d` on a curve of genus `g`.
//!
//! Everything is computed over arbitrary-precision rationals. Weight-space
//! sweeps run on rayon when the `parallel` feature is enabled (the default)
//! and fall back to plain iterators otherwise.

pub mod arith;
pub mod chambers;
pub mod cli;
pub mod error;
pub mod json;
pub mod par;
pub mod picard;
pub mod svg;
pub mod sweep;
pub mod vanishing;
pub mod walls;

pub use arith::{
    codim_bound, genus_bound_embedding, moduli_dim, normalize_pair, ModuliSetup, NormalizedPair,
    Rational, Weight,
};

pub use chambers::{decompose, locate, path, Arrangement, ChamberDecomposition, FlipPath, Sign, SignVector};
pub use error::{Error, Result};
pub use par::Execution;
pub use picard::{Cone, DivisorClass, Side};

pub use walls::{enumerate_walls, first_wall, Wall};
