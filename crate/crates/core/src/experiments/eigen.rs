use serde::Serialize;

use super::{status, Report, SCHEMA_VERSION};
use crate::error::Result;
use crate::fields::ExponentPair;
use crate::jet::FieldExpr;
use crate::quadrature::Domain;
use crate::solver::{p2_oracle, principal_eigenvalue, EigenOptions, EigenResult};

/// Relative agreement required between descent and the `p = 2` oracle.
pub const ORACLE_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct EigenSetup {
    pub domain: Domain,
    pub g: FieldExpr,
    pub p: ExponentPair,
    pub opts: EigenOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenConfig {
    pub domain: String,
    pub g: String,
    pub p: f64,
    pub opts: EigenOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenReport {
    pub schema: u32,
    pub config: EigenConfig,
    pub result: EigenResult,
    /// Exact discrete eigenvalue, available at `p = 2`.
    pub oracle_lambda: Option<f64>,
    pub oracle_relative_diff: Option<f64>,
    pub oracle_tolerance: f64,
    pub passed: bool,
}

impl Report for EigenReport {
    fn name(&self) -> &str {
        "eigen"
    }

    fn passed(&self) -> bool {
        self.passed
    }

    fn summary(&self) -> String {
        let oracle = match (self.oracle_lambda, self.oracle_relative_diff) {
            (Some(l), Some(d)) => format!(", oracle {l:.10} (rel diff {d:.2e})"),
            _ => String::new(),
        };
        format!(
            "{} eigen p={} on {}: lambda = {:.10} after {} iterations{}",
            status(self.passed),
            self.config.p,
            self.config.domain,
            self.result.lambda,
            self.result.iterations,
            oracle
        )
    }

    /// The eigenfunction on the grid.
    fn data_csv(&self) -> String {
        self.result.eigenfunction.to_csv()
    }
}

/// Principal eigenvalue by preconditioned descent, cross-checked against the
/// direct `p = 2` solve when `p = 2`.
pub fn run_eigen(setup: &EigenSetup) -> Result<EigenReport> {
    let result =
        principal_eigenvalue(&setup.domain, &setup.g, setup.p, &setup.opts)?.into_converged()?;
    let oracle_lambda = if setup.p.p() == 2.0 {
        Some(p2_oracle(&setup.domain, &setup.g, setup.opts.n)?.lambda)
    } else {
        None
    };
    let oracle_relative_diff = oracle_lambda.map(|l| (result.lambda - l).abs() / l.abs());
    let passed = result.converged && oracle_relative_diff.is_none_or(|d| d <= ORACLE_TOL);
    Ok(EigenReport {
        schema: SCHEMA_VERSION,
        config: EigenConfig {
            domain: setup.domain.to_string(),
            g: setup.g.to_string(),
            p: setup.p.p(),
            opts: setup.opts,
        },
        result,
        oracle_lambda,
        oracle_relative_diff,
        oracle_tolerance: ORACLE_TOL,
        passed,
    })
}
