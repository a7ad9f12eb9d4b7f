//! Exact structure-constant engine for finite quantum groups.
//!
//! A finite quantum group is stored as a finite-dimensional Hopf *-algebra
//! with explicit structure constants. On top of that the crate provides the
//! convolution calculus and Fourier transform, the dual quantum group,
//! quantum families of maps with their automorphism predicates, and the
//! relation systems for families acting on classical groups.

pub mod algebra;
pub mod classical;
pub mod constructors;
pub mod error;
pub mod family;
pub mod fixtures;
pub mod fourier;
pub mod group;
pub mod hopf;
pub mod io;
pub mod linalg;
pub mod map;
pub mod oracle;
pub mod report;
pub mod scalar;
pub mod selftest;

pub use error::{Error, Result};
pub use scalar::{Backend, Exact, Float, Scalar};
