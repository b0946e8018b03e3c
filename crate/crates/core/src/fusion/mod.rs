//! Classical decompositions, module maps, fundamental modules by fusion and Dorey-type
//! morphisms.

pub mod dorey;
pub mod fundamental;
pub mod homs;
pub mod isotypic;
pub mod solve;

pub use dorey::{dorey_coefficients, extremal_vectors, verify_dorey, DoreyCoefficient, DoreyRegime, DoreyReport, MorphismCheck};
pub use homs::{apply_symbolic, find_homs, HomMap, HomSpace};
pub use isotypic::{apply_block, apply_block_flat, highest_weight_vectors, Isotypic, Slot, WordTree, ZGraded};
pub use fundamental::{at, e0_twist, fundamental_rep, generated_submodule, neg_q2_half_pow, neg_q_pow, spectral_shift};
