use serde::Serialize;

use super::residual::PBiharmonic;
use super::{max_abs, status, Report, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::fields::{ExponentPair, NonlinearityProfile};
use crate::jet::FieldExpr;
use crate::picone::NonlinearIdentity;
use crate::quadrature::{integrate, Domain, PointSet, QuadratureRule};

/// Bound on each normalized equation residual.
pub const SYSTEM_TOL: f64 = 1e-8;
/// Bound on `max |u - c1 v| / max |u|`.
pub const DEVIATION_TOL: f64 = 1e-10;
/// Bound on `|∫R| / max(1, ∫|Δu|^p)`.
pub const INTEGRAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct SingularSetup {
    pub v: FieldExpr,
    pub c1: f64,
    pub f: NonlinearityProfile,
    pub p: ExponentPair,
    pub domain: Domain,
    pub rule: QuadratureRule,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularConfig {
    pub v: String,
    pub c1: f64,
    pub f: String,
    pub p: f64,
    pub domain: String,
    pub panels: usize,
    pub gauss_order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProportionalityReport {
    pub schema: u32,
    pub config: SingularConfig,
    /// Least-squares ratio `Σ u v / Σ v^2` over the nodes.
    pub c1: f64,
    pub relative_deviation: f64,
    /// `max |Δ_p^2 u - f(v)| / max(1, max |f(v)|)`.
    pub residual_u_equation: f64,
    /// `max |Δ_p^2 v - f(v)^2 / u^(p-1)| / max(1, max |f(v)^2 / u^(p-1)|)`.
    pub residual_v_equation: f64,
    #[serde(rename = "integral_R")]
    pub integral_r: f64,
    pub passed: bool,
    #[serde(skip)]
    nodes: Vec<(Vec<f64>, f64, f64)>,
}

impl Report for ProportionalityReport {
    fn name(&self) -> &str {
        "singular"
    }

    fn passed(&self) -> bool {
        self.passed
    }

    fn summary(&self) -> String {
        format!(
            "{} singular system: c1 = {:.15e} (given {:.15e}), deviation {:.2e}, residuals {:.2e} / {:.2e}, integral R = {:.2e}",
            status(self.passed),
            self.c1,
            self.config.c1,
            self.relative_deviation,
            self.residual_u_equation,
            self.residual_v_equation,
            self.integral_r
        )
    }

    fn data_csv(&self) -> String {
        let mut out = String::from(if self.nodes.first().map_or(1, |n| n.0.len()) == 1 {
            "x,u,v\n"
        } else {
            "x,y,u,v\n"
        });
        for (x, u, v) in &self.nodes {
            for c in x {
                out.push_str(&format!("{c},"));
            }
            out.push_str(&format!("{u},{v}\n"));
        }
        out
    }
}

fn normalized_residual(pairs: &[(f64, f64)]) -> f64 {
    let diff = max_abs(pairs.iter().map(|(l, r)| l - r));
    diff / max_abs(pairs.iter().map(|&(_, r)| r)).max(1.0)
}

/// Builds `u = c1 v`, checks that `(u, v)` solves the system, recovers the
/// ratio and integrates the Picone remainder.
pub fn run_singular_system(setup: &SingularSetup) -> Result<ProportionalityReport> {
    let (domain, rule, p) = (&setup.domain, &setup.rule, setup.p.p());
    let v = setup.v.with_dim(domain.dim())?;
    let u = setup.c1 * v.clone();
    let fv = setup.f.compose(&v)?.with_dim(domain.dim())?;
    let (op_u, op_v) = (PBiharmonic::new(&u, setup.p), PBiharmonic::new(&v, setup.p));

    let mut eq_u = Vec::new();
    let mut eq_v = Vec::new();
    let mut nodes = Vec::new();
    for x in PointSet::default_for(domain).iter() {
        let (ux, vx, f) = (u.eval(x)?, v.eval(x)?, fv.eval(x)?);
        if ux <= 0.0 || vx <= 0.0 {
            return Err(Error::HypothesisViolation(format!(
                "u = {ux}, v = {vx} must be positive at {x:?}"
            )));
        }
        eq_u.push((op_u.eval(x)?, f));
        eq_v.push((op_v.eval(x)?, f * f / ux.powf(p - 1.0)));
        nodes.push((x.to_vec(), ux, vx));
    }
    let residual_u_equation = normalized_residual(&eq_u);
    let residual_v_equation = normalized_residual(&eq_v);
    for (what, value) in [
        ("first equation residual", residual_u_equation),
        ("second equation residual", residual_v_equation),
    ] {
        if !(value <= SYSTEM_TOL) {
            return Err(Error::ResidualTooLarge {
                what: what.into(),
                value,
                tolerance: SYSTEM_TOL,
            });
        }
    }

    let (uv, vv) = nodes
        .iter()
        .fold((0.0, 0.0), |(a, b), (_, u, v)| (a + u * v, b + v * v));
    let c1 = uv / vv;
    let relative_deviation =
        max_abs(nodes.iter().map(|(_, u, v)| u - c1 * v)) / max_abs(nodes.iter().map(|n| n.1));

    let id = NonlinearIdentity::new(&u, &v, &setup.f, setup.p)?;
    let integral_r = integrate(|x| id.rhs(x), domain, rule)?;
    let energy = integrate(|x| Ok(u.jet(x)?.laplacian().abs().powf(p)), domain, rule)?;
    let passed =
        relative_deviation <= DEVIATION_TOL && integral_r.abs() <= INTEGRAL_TOL * energy.max(1.0);
    Ok(ProportionalityReport {
        schema: SCHEMA_VERSION,
        config: SingularConfig {
            v: setup.v.to_string(),
            c1: setup.c1,
            f: setup.f.label().to_string(),
            p,
            domain: domain.to_string(),
            panels: rule.panels(),
            gauss_order: rule.order(),
        },
        c1,
        relative_deviation,
        residual_u_equation,
        residual_v_equation,
        integral_r,
        passed,
        nodes,
    })
}
