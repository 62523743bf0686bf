use serde::Serialize;

use super::{Domain, QuadratureRule};
use crate::error::{Error, Result};
use crate::jet::FieldExpr;
use crate::picone::Identity;

/// Quadrature of `f` over `domain`, summed in the rule's fixed node order.
pub fn integrate<F>(mut f: F, domain: &Domain, rule: &QuadratureRule) -> Result<f64>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    let mut sum = 0.0;
    for (x, w) in rule.nodes(domain) {
        sum += w * f(&x)?;
    }
    Ok(sum)
}

pub fn integrate_expr(expr: &FieldExpr, domain: &Domain, rule: &QuadratureRule) -> Result<f64> {
    integrate(|x| expr.eval(x), domain, rule)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiconeIntegralReport {
    pub int_l: f64,
    pub int_r: f64,
    pub min_pointwise_l: f64,
    pub nodes: usize,
}

/// Integrates both sides of `identity` and tracks the smallest pointwise `L`.
/// Every node must be admissible.
pub fn integrate_picone(
    identity: &Identity,
    domain: &Domain,
    rule: &QuadratureRule,
) -> Result<PiconeIntegralReport> {
    if identity.dim() != domain.dim() {
        return Err(Error::DimensionMismatch {
            expected: domain.dim(),
            got: identity.dim(),
        });
    }
    let mut report = PiconeIntegralReport {
        int_l: 0.0,
        int_r: 0.0,
        min_pointwise_l: f64::INFINITY,
        nodes: 0,
    };
    let mut bad = Vec::new();
    for (x, w) in rule.nodes(domain) {
        let e = identity.eval(&x)?;
        if !e.admissible {
            bad.push(format!("node {x:?}"));
            continue;
        }
        report.int_l += w * e.lhs;
        report.int_r += w * e.rhs;
        report.min_pointwise_l = report.min_pointwise_l.min(e.lhs);
        report.nodes += 1;
    }
    if !bad.is_empty() {
        return Err(Error::AdmissibilityViolation { violations: bad });
    }
    Ok(report)
}
