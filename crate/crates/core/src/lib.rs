//! Exact computation of fundamental representations, normalized R-matrices and their
//! denominators for the quantum affine algebras of types `A(2)_{2n-1}`, `A(2)_{2n}`, `B(1)_n`
//! and `D(2)_{n+1}`, together with closed-form denominator tables, bracket calculus for the
//! universal scalars, and the verification harness tying them together.

pub mod brackets;
pub mod cartan;
pub mod error;
pub mod exact;
pub mod fusion;
pub mod modules;
pub mod rmatrix;
pub mod verify;

pub use error::{Error, Result};
