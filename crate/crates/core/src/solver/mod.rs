//! Finite-difference discretization of the p-biharmonic eigenproblem with
//! Navier conditions.
//!
//! The Navier problem is discretized by composing the zero-Dirichlet
//! Laplacian stencil `A` with itself, so at `p = 2` the discrete operator is
//! the matrix `A^2` and [`p2_oracle`] solves it directly.

mod banded;
mod eigen;
mod grid;
mod oracle;

pub use banded::{BandedCholesky, BandedSym};
pub use eigen::{principal_eigenvalue, rayleigh_quotient, EigenOptions, EigenResult};
pub use grid::{discrete_laplacian, Grid, GridFunction};
pub use oracle::{biharmonic_matrix, linearized_min_eigenvalue, p2_oracle};
