//! Closed-form denominator tables for all classical affine types, the end-to-end comparison
//! harness, pole analysis, the fusion divisibility check and the Schur–Weyl quiver.

mod closed;
mod compare;
mod divisibility;
mod quiver;

pub use closed::{closed_form_denominator, table_pairs};
pub use compare::{compare_end_to_end, compare_with_r_matrix, double_pole_predicate, Report};
pub use divisibility::{check_lemma16, check_lemma16_with, surjection_parameters, Lemma16Outcome, Surjection};
pub use quiver::{schur_weyl_quiver, QuiverOutput, QuiverVertex};
