//! Exact computations with Lie-Rinehart algebras over polynomial rings.
//!
//! Everything is over `ℚ` with arbitrary-precision rationals. The crate is
//! `no_std` with `alloc`; file formats and the command line live in the
//! `rinehart` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod extensions;
pub mod invariant_theory;
pub mod lie_rinehart;
pub mod linalg;
pub mod poly;
pub mod presets;
pub mod sampling;
pub mod tautological;

pub use error::{Error, Result};
pub use lie_rinehart::{LElement, LieRinehartPresentation};
pub use poly::{Monomial, Poly, Var, VarKind};
pub use tautological::TautologicalAlgebra;

pub type Rational = num_rational::BigRational;
