//! Finitely presented modules: Fitting ideals, exterior powers, ideal
//! membership, truncated graded dimensions and ranks at characters.

mod character;
mod graded;
pub mod groebner;
mod ideal;
mod presentation;

pub use character::{eval_at_character, rank_at_character, rank_at_character_fq, CharacterPoint};
pub use graded::{
    graded_dims_groebner, graded_dims_linear, graded_dims_truncated, monomials_of_degree, GradedDims,
    MAX_TRUNCATION_ORDER,
};
pub use ideal::{
    determinant, exterior_power_presentation, fitting_ideal, ideal_membership, quotient_is_finite, subsets, vanishes_at,
    Ideal,
};
pub use presentation::ModulePresentation;
