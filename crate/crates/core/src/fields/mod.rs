//! Test fields, nonlinearities, and checks of the hypotheses the identities
//! and theorems place on them.

mod admissibility;
mod catalog;
mod exponent;
mod nonlinearity;

pub use admissibility::{admissible_pair, check_nonlinearity, AdmissibilityReport, Violation};
pub use catalog::{catalog, product2d, resolve_field, CatalogEntry};
pub use exponent::ExponentPair;
pub use nonlinearity::{
    nonlinearity_c1_gap, nonlinearity_c1_gap_variant, nonlinearity_c2_check, C1Variant,
    NonlinearityProfile,
};
