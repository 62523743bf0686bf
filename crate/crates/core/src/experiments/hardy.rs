use serde::Serialize;

use super::residual::PBiharmonic;
use super::{status, Report, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::fields::{ExponentPair, NonlinearityProfile};
use crate::jet::FieldExpr;
use crate::quadrature::{integrate, Domain, PointSet, QuadratureRule};

/// Boundary values of corpus members must not exceed this.
pub const BOUNDARY_TOL: f64 = 1e-12;
/// Relative slack in the margins and in the supersolution residual.
pub const MARGIN_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct HardySetup {
    /// Positive supersolution.
    pub v: FieldExpr,
    pub f: NonlinearityProfile,
    pub g: FieldExpr,
    pub lambda: f64,
    pub p: ExponentPair,
    /// Test functions vanishing on the boundary.
    pub corpus: Vec<FieldExpr>,
    pub domain: Domain,
    pub rule: QuadratureRule,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardyConfig {
    pub v: String,
    pub f: String,
    pub g: String,
    pub lambda: f64,
    pub p: f64,
    pub corpus: Vec<String>,
    pub domain: String,
    pub panels: usize,
    pub gauss_order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardyRow {
    pub u: String,
    /// `∫|Δu|^p`.
    pub lhs: f64,
    /// `λ ∫ g |u|^p`.
    pub rhs: f64,
    pub margin: f64,
    /// `∫|Δu|^p / ∫ g |u|^p`.
    pub quotient: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardyReport {
    pub schema: u32,
    pub config: HardyConfig,
    pub lambda: f64,
    pub rows: Vec<HardyRow>,
    /// Every margin is at least `-MARGIN_TOL max(lhs, 1)`.
    pub all_pass: bool,
    /// `min Δ(|Δv|^(p-2) Δv) - λ g f(v)` over the hypothesis nodes.
    pub supersolution_residual_min: f64,
    /// `supersolution_residual_min >= -MARGIN_TOL max(1, max |λ g f(v)|)`.
    pub hypothesis_holds: bool,
    /// No claim is made when the hypothesis fails, so this is
    /// `!hypothesis_holds || all_pass`.
    pub passed: bool,
}

impl Report for HardyReport {
    fn name(&self) -> &str {
        "hardy"
    }

    fn passed(&self) -> bool {
        self.passed
    }

    fn summary(&self) -> String {
        let claim = if self.hypothesis_holds {
            format!("all margins >= 0: {}", self.all_pass)
        } else {
            "supersolution hypothesis fails, no inequality claimed".to_string()
        };
        let min_q = self
            .rows
            .iter()
            .fold(f64::INFINITY, |m, r| m.min(r.quotient));
        format!(
            "{} hardy lambda={}: {} corpus rows, min quotient {:.6}, supersolution residual min {:.3e}; {}",
            status(self.passed),
            self.lambda,
            self.rows.len(),
            min_q,
            self.supersolution_residual_min,
            claim
        )
    }

    fn data_csv(&self) -> String {
        let mut out = String::from("u,lhs,rhs,margin,quotient\n");
        for r in &self.rows {
            out.push_str(&format!(
                "\"{}\",{},{},{},{}\n",
                r.u, r.lhs, r.rhs, r.margin, r.quotient
            ));
        }
        out
    }
}

fn check_corpus(u: &FieldExpr, domain: &Domain) -> Result<()> {
    let mut violations = Vec::new();
    for x in domain.boundary_points(16) {
        let j = u.jet(&x)?;
        if j.value().abs() > BOUNDARY_TOL {
            violations.push(format!(
                "corpus member {u} is {} at boundary point {x:?}",
                j.value()
            ));
        }
        if !j.laplacian().is_finite() {
            violations.push(format!(
                "corpus member {u} has unbounded Laplacian at {x:?}"
            ));
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::AdmissibilityViolation { violations })
    }
}

/// Checks the supersolution hypothesis on a node grid and compares both sides
/// of the inequality for every corpus member.
pub fn run_hardy(setup: &HardySetup) -> Result<HardyReport> {
    let (domain, rule, p) = (&setup.domain, &setup.rule, setup.p.p());
    let v = setup.v.with_dim(domain.dim())?;
    let g = setup.g.with_dim(domain.dim())?;
    let fv = setup.f.compose(&v)?.with_dim(domain.dim())?;
    let op = PBiharmonic::new(&v, setup.p);

    let mut residual_min = f64::INFINITY;
    let mut forcing_max = 0.0f64;
    let mut bad = Vec::new();
    for x in PointSet::default_for(domain).iter() {
        let vx = v.eval(x)?;
        if vx <= 0.0 {
            bad.push(format!("v = {vx} at {x:?}"));
            continue;
        }
        let forcing = setup.lambda * g.eval(x)? * fv.eval(x)?;
        forcing_max = forcing_max.max(forcing.abs());
        residual_min = residual_min.min(op.eval(x)? - forcing);
    }
    if !bad.is_empty() {
        return Err(Error::AdmissibilityViolation { violations: bad });
    }
    let hypothesis_holds = residual_min >= -MARGIN_TOL * forcing_max.max(1.0);

    let mut rows = Vec::with_capacity(setup.corpus.len());
    for u in &setup.corpus {
        let u = u.with_dim(domain.dim())?;
        check_corpus(&u, domain)?;
        let lhs = integrate(|x| Ok(u.jet(x)?.laplacian().abs().powf(p)), domain, rule)?;
        let weighted = integrate(|x| Ok(g.eval(x)? * u.eval(x)?.abs().powf(p)), domain, rule)?;
        let rhs = setup.lambda * weighted;
        let margin = lhs - rhs;
        rows.push(HardyRow {
            u: u.to_string(),
            lhs,
            rhs,
            margin,
            quotient: lhs / weighted,
            passed: margin >= -MARGIN_TOL * lhs.max(1.0),
        });
    }
    let all_pass = rows.iter().all(|r| r.passed);
    Ok(HardyReport {
        schema: SCHEMA_VERSION,
        config: HardyConfig {
            v: setup.v.to_string(),
            f: setup.f.label().to_string(),
            g: setup.g.to_string(),
            lambda: setup.lambda,
            p,
            corpus: setup.corpus.iter().map(|u| u.to_string()).collect(),
            domain: domain.to_string(),
            panels: rule.panels(),
            gauss_order: rule.order(),
        },
        lambda: setup.lambda,
        rows,
        all_pass,
        supersolution_residual_min: residual_min,
        hypothesis_holds,
        passed: !hypothesis_holds || all_pass,
    })
}
