//! Normalized R-matrices, their denominators and the explicit computation of `R^norm_{1,n}`
//! for `D2`.

pub mod denom;
pub mod intertwiner;
pub mod r11;
pub mod spectral;

pub use denom::{fmt_z_poly, lcm_without_z, linear_factor_string, to_spectral_variable, DenomPoly};
pub use intertwiner::{
    denominator, dominant_weight, invert_variable, is_minimal, modular_denominator, normalized_r_matrix, pole_orders,
    r_matrix_between, reduce_poly, unitarity_holds, Intertwiner, MODULAR_QS,
};
pub use r11::{compare_r11, label_rank, r11_coefficients, LabelOrder, R11Check, R11Coefficients, R11Scope};
pub use spectral::{restrict_to_hw, spectral_r_1n, spectral_r_1n_formula, SpectralR1n};
