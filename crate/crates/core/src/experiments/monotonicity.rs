use serde::Serialize;

use super::{status, Report, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::fields::ExponentPair;
use crate::jet::FieldExpr;
use crate::quadrature::Domain;
use crate::solver::{principal_eigenvalue, EigenOptions};

/// The gap must exceed this fraction of `λ1 + λ2`. Converged descent runs
/// resolve each eigenvalue far below it.
pub const GAP_REL_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct MonotonicitySetup {
    /// The smaller domain.
    pub domain1: Domain,
    pub domain2: Domain,
    pub g: FieldExpr,
    pub p: ExponentPair,
    pub opts: EigenOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityConfig {
    pub domain1: String,
    pub domain2: String,
    pub g: String,
    pub p: f64,
    pub opts: EigenOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub schema: u32,
    pub config: MonotonicityConfig,
    pub lambda1: f64,
    pub lambda2: f64,
    pub iterations: [usize; 2],
    /// `λ1 - λ2`.
    pub strict_gap: f64,
    /// `GAP_REL_TOL (λ1 + λ2)`.
    pub tolerance: f64,
    pub passed: bool,
}

impl Report for MonotonicityReport {
    fn name(&self) -> &str {
        "monotonicity"
    }

    fn passed(&self) -> bool {
        self.passed
    }

    fn summary(&self) -> String {
        format!(
            "{} monotonicity p={}: lambda({}) = {:.8} > lambda({}) = {:.8}, gap {:.6} (tol {:.2e})",
            status(self.passed),
            self.config.p,
            self.config.domain1,
            self.lambda1,
            self.config.domain2,
            self.lambda2,
            self.strict_gap,
            self.tolerance
        )
    }

    fn data_csv(&self) -> String {
        format!(
            "domain,lambda,iterations\n{},{},{}\n{},{},{}\n",
            self.config.domain1,
            self.lambda1,
            self.iterations[0],
            self.config.domain2,
            self.lambda2,
            self.iterations[1]
        )
    }
}

/// Principal eigenvalues of nested domains at the same grid size.
pub fn run_monotonicity(setup: &MonotonicitySetup) -> Result<MonotonicityReport> {
    if !setup.domain1.strictly_inside(&setup.domain2) {
        return Err(Error::HypothesisViolation(format!(
            "{} is not strictly contained in {}",
            setup.domain1, setup.domain2
        )));
    }
    let r1 =
        principal_eigenvalue(&setup.domain1, &setup.g, setup.p, &setup.opts)?.into_converged()?;
    let r2 =
        principal_eigenvalue(&setup.domain2, &setup.g, setup.p, &setup.opts)?.into_converged()?;
    let strict_gap = r1.lambda - r2.lambda;
    let tolerance = GAP_REL_TOL * (r1.lambda.abs() + r2.lambda.abs());
    Ok(MonotonicityReport {
        schema: SCHEMA_VERSION,
        config: MonotonicityConfig {
            domain1: setup.domain1.to_string(),
            domain2: setup.domain2.to_string(),
            g: setup.g.to_string(),
            p: setup.p.p(),
            opts: setup.opts,
        },
        lambda1: r1.lambda,
        lambda2: r2.lambda,
        iterations: [r1.iterations, r2.iterations],
        strict_gap,
        tolerance,
        passed: strict_gap > tolerance,
    })
}
