//! Numerical verification of Picone-type identities for the p-biharmonic
//! operator and of the inequalities derived from them.
//!
//! Fields are closed-form expression trees differentiated exactly by
//! second-order jets ([`jet`]). The identity evaluators ([`picone`]) compare
//! both sides pointwise, [`quadrature`] integrates them, [`solver`] computes
//! principal eigenvalues on finite-difference grids, and [`experiments`]
//! assembles one scenario per theorem.

pub mod corpus;
pub mod error;
pub mod experiments;
pub mod fields;
pub mod jet;
pub mod picone;
pub mod quadrature;
pub mod solver;

pub use error::{Error, Result};
pub use fields::{ExponentPair, NonlinearityProfile};
pub use jet::{FieldExpr, Jet2};
pub use picone::PiconePointEval;
pub use quadrature::{Domain, PointSet, QuadratureRule};
