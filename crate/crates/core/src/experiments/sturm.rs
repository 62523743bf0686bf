use serde::Serialize;

use super::residual::PBiharmonic;
use super::{status, Report, SCHEMA_VERSION};
use crate::corpus::sample_points;
use crate::error::{Error, Result};
use crate::fields::{ExponentPair, NonlinearityProfile};
use crate::jet::FieldExpr;
use crate::picone::{NonlinearForm, NonlinearIdentity};
use crate::quadrature::{integrate, Domain, PointSet, QuadratureRule};

/// Bound on `max |Δ_p^2 u - f1 u^(p-1)| / max(1, max |f1 u^(p-1)|)`.
pub const U_RESIDUAL_TOL: f64 = 1e-8;
/// Floor on `R / scale` over the candidate sweep.
pub const R_FLOOR: f64 = -1e-10;
/// Sample points per candidate.
const CANDIDATE_POINTS: usize = 500;

#[derive(Debug, Clone)]
pub struct SturmSetup {
    /// Positive solution of the first problem.
    pub u: FieldExpr,
    pub f1: FieldExpr,
    pub f2: FieldExpr,
    pub p: ExponentPair,
    pub f: NonlinearityProfile,
    /// Positive fields `v` with `-Δv > 0`, tested pointwise for `R(u, v) >= 0`.
    pub candidates: Vec<FieldExpr>,
    pub domain: Domain,
    pub rule: QuadratureRule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SturmConclusion {
    NoPositiveVPossible,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SturmConfig {
    pub u: String,
    pub f1: String,
    pub f2: String,
    pub p: f64,
    pub f: String,
    pub domain: String,
    pub panels: usize,
    pub gauss_order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SturmCandidate {
    pub v: String,
    /// `min R(u, v) / scale` over the samples.
    pub r_min: f64,
    pub admissible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SturmReport {
    pub schema: u32,
    pub config: SturmConfig,
    pub u_residual: f64,
    /// `∫(f1 - f2) u^p`.
    pub contradiction_integral: f64,
    pub candidates: Vec<SturmCandidate>,
    #[serde(rename = "pointwise_R_min")]
    pub pointwise_r_min: f64,
    pub conclusion: SturmConclusion,
    pub passed: bool,
}

impl Report for SturmReport {
    fn name(&self) -> &str {
        "sturm"
    }

    fn passed(&self) -> bool {
        self.passed
    }

    fn summary(&self) -> String {
        format!(
            "{} sturm: contradiction integral {:.12}, min R/scale {:.3e} over {} candidates, {}",
            status(self.passed),
            self.contradiction_integral,
            self.pointwise_r_min,
            self.candidates.len(),
            match self.conclusion {
                SturmConclusion::NoPositiveVPossible => "no positive v possible",
                SturmConclusion::Inconclusive => "inconclusive",
            }
        )
    }

    fn data_csv(&self) -> String {
        let mut out = String::from("v,r_min,admissible\n");
        for c in &self.candidates {
            out.push_str(&format!("\"{}\",{},{}\n", c.v, c.r_min, c.admissible));
        }
        out
    }
}

/// Positive fields with negative Laplacian on `domain`: the first sine mode,
/// the product of parabolas and a mixture of the two.
pub fn default_candidates(domain: &Domain) -> Vec<FieldExpr> {
    let axes = domain.axes();
    let product = |f: &dyn Fn(FieldExpr, f64, f64) -> FieldExpr| {
        axes.iter()
            .enumerate()
            .map(|(k, &(a, b))| f(FieldExpr::coord(k), a, b))
            .reduce(|acc, t| acc * t)
            .expect("domains have at least one axis")
    };
    let sine = product(&|x, a, b| ((std::f64::consts::PI / (b - a)) * (x - a)).sin());
    let parabola = product(&|x, a, b| (x.clone() - a) * (b - x) / ((b - a) * (b - a)));
    let mix = sine.clone() + 0.5 * parabola.clone();
    [sine, parabola, mix]
        .into_iter()
        .map(|e| e.with_dim(domain.dim()).expect("dimension matches"))
        .collect()
}

/// Verifies the contradiction behind the comparison theorem: a negative
/// `∫(f1 - f2) u^p` together with `R(u, v) >= 0` for positive `v`.
pub fn run_sturm(setup: &SturmSetup) -> Result<SturmReport> {
    let (domain, rule, p) = (&setup.domain, &setup.rule, setup.p.p());
    let dim = domain.dim();
    let u = setup.u.with_dim(dim)?;
    let f1 = setup.f1.with_dim(dim)?;
    let f2 = setup.f2.with_dim(dim)?;
    let op = PBiharmonic::new(&u, setup.p);

    let mut residual = 0.0f64;
    let mut forcing_max = 0.0f64;
    for x in PointSet::default_for(domain).iter() {
        let (ux, a, b) = (u.eval(x)?, f1.eval(x)?, f2.eval(x)?);
        if ux <= 0.0 {
            return Err(Error::HypothesisViolation(format!(
                "u = {ux} is not positive at {x:?}"
            )));
        }
        if a >= b {
            return Err(Error::HypothesisViolation(format!(
                "f1 = {a} >= f2 = {b} at {x:?}"
            )));
        }
        let forcing = a * ux.powf(p - 1.0);
        forcing_max = forcing_max.max(forcing.abs());
        residual = residual.max((op.eval(x)? - forcing).abs());
    }
    let u_residual = residual / forcing_max.max(1.0);
    if u_residual > U_RESIDUAL_TOL {
        return Err(Error::HypothesisViolation(format!(
            "u does not solve the first problem: residual {u_residual:e} > {U_RESIDUAL_TOL:e}"
        )));
    }

    let contradiction_integral = integrate(
        |x| Ok((f1.eval(x)? - f2.eval(x)?) * u.eval(x)?.powf(p)),
        domain,
        rule,
    )?;

    let samples = sample_points(domain, CANDIDATE_POINTS);
    let mut candidates = Vec::with_capacity(setup.candidates.len());
    for v in &setup.candidates {
        let v = v.with_dim(dim)?;
        let id = NonlinearIdentity::new(&u, &v, &setup.f, setup.p)?;
        let mut r_min = f64::INFINITY;
        let mut admissible = true;
        for x in samples.iter() {
            let e = id.eval(x, NonlinearForm::Rederived)?;
            admissible &= e.admissible;
            r_min = r_min.min(e.rhs / e.scale());
        }
        candidates.push(SturmCandidate {
            v: v.to_string(),
            r_min,
            admissible,
        });
    }
    let pointwise_r_min = candidates.iter().fold(f64::INFINITY, |m, c| m.min(c.r_min));
    let conclusion = if contradiction_integral < 0.0
        && !candidates.is_empty()
        && candidates
            .iter()
            .all(|c| c.admissible && c.r_min >= R_FLOOR)
    {
        SturmConclusion::NoPositiveVPossible
    } else {
        SturmConclusion::Inconclusive
    };
    Ok(SturmReport {
        schema: SCHEMA_VERSION,
        config: SturmConfig {
            u: setup.u.to_string(),
            f1: setup.f1.to_string(),
            f2: setup.f2.to_string(),
            p,
            f: setup.f.label().to_string(),
            domain: domain.to_string(),
            panels: rule.panels(),
            gauss_order: rule.order(),
        },
        u_residual,
        contradiction_integral,
        candidates,
        pointwise_r_min,
        conclusion,
        passed: conclusion == SturmConclusion::NoPositiveVPossible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::unit_interval;
    use crate::jet::parse_expr;
    use std::f64::consts::PI;

    fn setup(f2: &str) -> SturmSetup {
        let d = unit_interval();
        SturmSetup {
            u: parse_expr("(sin (* pi x))").unwrap(),
            f1: FieldExpr::constant(PI.powi(4)),
            f2: parse_expr(f2).unwrap(),
            p: ExponentPair::new(2.0).unwrap(),
            f: NonlinearityProfile::linear(),
            candidates: default_candidates(&d),
            domain: d,
            rule: QuadratureRule::default(),
        }
    }

    #[test]
    fn unit_gap_gives_minus_one_half() {
        let r = run_sturm(&setup(&format!("{}", PI.powi(4) + 1.0))).unwrap();
        assert!((r.contradiction_integral + 0.5).abs() <= 1e-10);
        assert_eq!(r.conclusion, SturmConclusion::NoPositiveVPossible);
        assert!(r.pointwise_r_min >= R_FLOOR);
    }

    #[test]
    fn equal_coefficients_violate_strictness() {
        let err = run_sturm(&setup(&format!("{}", PI.powi(4)))).unwrap_err();
        assert!(matches!(err, Error::HypothesisViolation(_)));
    }

    #[test]
    fn wrong_u_is_rejected() {
        let mut s = setup("200");
        s.u = parse_expr("(* x (- 1 x))").unwrap();
        assert!(matches!(run_sturm(&s), Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn candidates_on_a_rectangle_are_admissible() {
        use crate::fields::admissible_pair;
        let d = crate::corpus::unit_rectangle();
        let u = parse_expr("(* x0 (- 1 x0) x1 (- 2 x1))").unwrap();
        for v in default_candidates(&d) {
            let r = admissible_pair(
                &u,
                &v,
                &d,
                &sample_points(&d, 200),
                ExponentPair::new(2.0).unwrap(),
                true,
            )
            .unwrap();
            assert!(r.is_admissible(), "{v}");
        }
    }
}
