//! Intervals and rectangles, sample sets on them, and composite Gauss-Legendre
//! quadrature.

mod domain;
mod gauss;
mod integrate;

pub use domain::{Domain, PointSet};
pub use gauss::{gauss_legendre, QuadratureRule, DEFAULT_ORDER, DEFAULT_PANELS};
pub use integrate::{integrate, integrate_expr, integrate_picone, PiconeIntegralReport};
