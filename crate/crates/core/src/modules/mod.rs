//! Finite-dimensional integrable modules: vector and spin representations, spectral twists,
//! tensor products through the coproduct, and exhaustive checks of the defining relations.
//!
//! Generator actions are stored column-wise: for each generator and each basis vector, the list
//! of nonzero images. Each entry may carry a power of the symbolic spectral variable `z`; only
//! `e_0` and `f_0` ever carry a nonzero power.

mod relations;
mod rep;

pub use relations::check_relations;
pub use rep::*;
