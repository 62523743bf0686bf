use serde::Serialize;

use super::ExponentPair;
use crate::error::{Error, Result};
use crate::jet::{parse_expr_with_alias, FieldExpr};

/// A positive `C^2` nonlinearity `f(y)`, given as a one-dimensional field in
/// the variable `y = x0`. Derivatives come from jets.
#[derive(Debug, Clone, PartialEq)]
pub struct NonlinearityProfile {
    f: FieldExpr,
    label: String,
}

/// Values `f(y)`, `f'(y)`, `f''(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NonlinearityValues {
    pub f: f64,
    pub df: f64,
    pub d2f: f64,
}

/// Exponent used in the lower bound `f' >= (p-1) f^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum C1Variant {
    /// `e = (p-2)/(p-1)`, the exponent Young's inequality requires.
    #[default]
    Proof,
    /// `e = (p-1)/(p-2)`, the exponent as written in the lemma statement.
    Statement,
}

impl C1Variant {
    pub fn exponent(self, p: ExponentPair) -> f64 {
        let p = p.p();
        match self {
            C1Variant::Proof => (p - 2.0) / (p - 1.0),
            C1Variant::Statement => (p - 1.0) / (p - 2.0),
        }
    }
}

impl NonlinearityProfile {
    pub fn new(f: FieldExpr, label: impl Into<String>) -> Result<Self> {
        if f.dim() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: f.dim(),
            });
        }
        Ok(NonlinearityProfile {
            f,
            label: label.into(),
        })
    }

    /// `f(y) = y`.
    pub fn linear() -> Self {
        NonlinearityProfile {
            f: FieldExpr::coord(0),
            label: "linear".into(),
        }
    }

    /// `f(y) = y^(p-1)`, the equality case of the lower bound on `f'`.
    pub fn power(p: ExponentPair) -> Self {
        NonlinearityProfile {
            f: FieldExpr::coord(0).pow(p.p() - 1.0),
            label: format!("power {}", p.p() - 1.0),
        }
    }

    /// Resolves a nonlinearity from text: a named profile (`linear`,
    /// `scaled c`, `power`, `sqrt`, `softplus`, `quad_over_one_plus`) or an
    /// s-expression in `y`.
    pub fn parse(spec: &str, p: ExponentPair) -> Result<Self> {
        let spec = spec.trim();
        let y = FieldExpr::coord(0);
        let words: Vec<&str> = spec.split_whitespace().collect();
        let f = match words.as_slice() {
            ["linear"] => return Ok(NonlinearityProfile::linear()),
            ["power"] => return Ok(NonlinearityProfile::power(p)),
            ["scaled", c] => {
                let c: f64 = c.parse().map_err(|_| {
                    Error::InvalidInput(format!("bad scale in nonlinearity `{spec}`"))
                })?;
                c * y
            }
            ["sqrt"] => y.powf(0.5),
            ["softplus"] => (1.0 + y.exp()).ln(),
            ["quad_over_one_plus"] => y.powi(2) / (1.0 + y),
            _ if spec.starts_with('(') || !spec.contains(' ') => {
                parse_expr_with_alias(spec, Some("y"))?
            }
            _ => return Err(Error::UnknownCatalogEntry(spec.to_string())),
        };
        NonlinearityProfile::new(f, spec)
    }

    pub fn expr(&self) -> &FieldExpr {
        &self.f
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, y: f64) -> Result<NonlinearityValues> {
        let j = self.f.jet(&[y])?;
        Ok(NonlinearityValues {
            f: j.value(),
            df: j.gradient()[0],
            d2f: j.hessian(0, 0),
        })
    }

    /// The field `f(v(x))`.
    pub fn compose(&self, v: &FieldExpr) -> Result<FieldExpr> {
        self.f.compose(v)
    }
}

/// `f'(y) - (p-1) f(y)^((p-2)/(p-1))`; nonnegative where `f` is admissible.
pub fn nonlinearity_c1_gap(profile: &NonlinearityProfile, y: f64, p: ExponentPair) -> Result<f64> {
    nonlinearity_c1_gap_variant(profile, y, p, C1Variant::Proof)
}

pub fn nonlinearity_c1_gap_variant(
    profile: &NonlinearityProfile,
    y: f64,
    p: ExponentPair,
    variant: C1Variant,
) -> Result<f64> {
    let v = profile.eval(y)?;
    if v.f <= 0.0 {
        return Err(Error::domain(
            profile.expr(),
            format!("f({y}) = {} is not positive", v.f),
        ));
    }
    Ok(v.df - (p.p() - 1.0) * v.f.powf(variant.exponent(p)))
}

/// `f''(y)`; admissible where it is `<= 0`.
pub fn nonlinearity_c2_check(profile: &NonlinearityProfile, y: f64) -> Result<f64> {
    Ok(profile.eval(y)?.d2f)
}
