//! Exact symbolic computation in the 2-adic ring C*-algebra `Q2`, the universal
//! C*-algebra generated by a unitary `U` and an isometry `S2` with
//! `S2 U = U^2 S2` and `S2 S2* + U S2 S2* U* = 1`.

pub mod algebra;
pub mod canonical;
pub mod cli;
pub mod diagonal;
pub mod error;
pub mod expectations;
pub mod morphisms;
pub mod parse;
pub mod scalar;
pub mod torus;

pub use algebra::{membership, Element, Generator, Monomial, MultiIndex, Subalgebra};
pub use error::{Error, Result};
pub use morphisms::Endomorphism;
pub use scalar::{DyadicCyclotomic, Rational, Scalar};
