use serde::Serialize;

use super::{nonlinearity_c1_gap, ExponentPair, NonlinearityProfile};
use crate::error::{Error, Result};
use crate::jet::FieldExpr;
use crate::quadrature::{Domain, PointSet};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub point: Vec<f64>,
    pub condition: String,
}

/// Extremes of the hypothesis quantities over a sample set, and every sample
/// where a strict inequality fails.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub sample_count: usize,
    pub min_u: f64,
    pub min_v: f64,
    /// Largest `Δv` seen; must be negative.
    pub max_lap_v: f64,
    pub min_f: Option<f64>,
    pub min_c1_gap: Option<f64>,
    pub max_f2: Option<f64>,
    pub violations: Vec<Violation>,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<Self> {
        if self.is_admissible() {
            Ok(self)
        } else {
            Err(Error::AdmissibilityViolation {
                violations: self
                    .violations
                    .iter()
                    .map(|v| format!("{} fails at {:?}", v.condition, v.point))
                    .collect(),
            })
        }
    }
}

/// Checks `u >= 0` (`u > 0` when `strict_u_positive` or `p < 2`), `v > 0`
/// and `-Δv > 0` at every sample.
pub fn admissible_pair(
    u: &FieldExpr,
    v: &FieldExpr,
    domain: &Domain,
    samples: &PointSet,
    p: ExponentPair,
    strict_u_positive: bool,
) -> Result<AdmissibilityReport> {
    if samples.dim() != domain.dim() {
        return Err(Error::DimensionMismatch {
            expected: domain.dim(),
            got: samples.dim(),
        });
    }
    let strict = strict_u_positive || p.p() < 2.0;
    let mut report = AdmissibilityReport {
        sample_count: samples.len(),
        min_u: f64::INFINITY,
        min_v: f64::INFINITY,
        max_lap_v: f64::NEG_INFINITY,
        min_f: None,
        min_c1_gap: None,
        max_f2: None,
        violations: Vec::new(),
    };
    for x in samples.iter() {
        if !domain.contains_open(x) {
            return Err(Error::InvalidInput(format!(
                "sample {x:?} is not inside {domain}"
            )));
        }
        let uj = u.jet(x)?;
        let vj = v.jet(x)?;
        let (uv, vv, lap) = (uj.value(), vj.value(), vj.laplacian());
        report.min_u = report.min_u.min(uv);
        report.min_v = report.min_v.min(vv);
        report.max_lap_v = report.max_lap_v.max(lap);
        let mut flag = |cond: &str| {
            report.violations.push(Violation {
                point: x.to_vec(),
                condition: cond.to_string(),
            })
        };
        if strict && uv <= 0.0 {
            flag("u > 0");
        } else if uv < 0.0 {
            flag("u >= 0");
        }
        if vv <= 0.0 {
            flag("v > 0");
        }
        if lap >= 0.0 {
            flag("-lap v > 0");
        }
    }
    Ok(report)
}

/// Adds the nonlinearity conditions `f(v) > 0`, `f'(v) >= (p-1) f^((p-2)/(p-1))`
/// and `f''(v) <= 0` at every sample to `report`.
pub fn check_nonlinearity(
    report: &mut AdmissibilityReport,
    f: &NonlinearityProfile,
    v: &FieldExpr,
    samples: &PointSet,
    p: ExponentPair,
) -> Result<()> {
    let (mut min_f, mut min_gap, mut max_f2) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for x in samples.iter() {
        let y = v.eval(x)?;
        let vals = f.eval(y)?;
        min_f = min_f.min(vals.f);
        max_f2 = max_f2.max(vals.d2f);
        let mut flag = |cond: &str| {
            report.violations.push(Violation {
                point: x.to_vec(),
                condition: cond.to_string(),
            })
        };
        if vals.f <= 0.0 {
            flag("f(v) > 0");
            continue;
        }
        let gap = nonlinearity_c1_gap(f, y, p)?;
        min_gap = min_gap.min(gap);
        if gap < 0.0 {
            flag("f' >= (p-1) f^((p-2)/(p-1))");
        }
        if vals.d2f > 0.0 {
            flag("f'' <= 0");
        }
    }
    report.min_f = Some(min_f);
    report.min_c1_gap = Some(min_gap);
    report.max_f2 = Some(max_f2);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::catalog;
    use std::f64::consts::PI;

    fn unit() -> Domain {
        Domain::interval(0.0, 1.0).unwrap()
    }

    fn p2() -> ExponentPair {
        ExponentPair::new(2.0).unwrap()
    }

    #[test]
    fn sine_pair_is_admissible() {
        let s = catalog("sine_mode", &[1.0]).unwrap();
        let samples = PointSet::grid(&unit(), 101);
        let r = admissible_pair(&s, &s, &unit(), &samples, p2(), false).unwrap();
        assert!(r.is_admissible());
        let max_v = samples
            .iter()
            .map(|x| s.eval(x).unwrap())
            .fold(f64::MIN, f64::max);
        let min_v = samples
            .iter()
            .map(|x| s.eval(x).unwrap())
            .fold(f64::MAX, f64::min);
        // max Δv = -π² min v over the samples
        assert!((r.max_lap_v + PI * PI * min_v).abs() < 1e-12);
        assert!(r.max_lap_v < 0.0 && max_v <= 1.0);
    }

    #[test]
    fn parabola_has_constant_laplacian() {
        let v = catalog("poly", &[0.0, 1.0, -1.0]).unwrap();
        let r = admissible_pair(
            &v,
            &v,
            &unit(),
            &PointSet::default_for(&unit()),
            p2(),
            false,
        )
        .unwrap();
        assert!(r.is_admissible());
        assert!((r.max_lap_v + 2.0).abs() < 1e-15);
    }

    #[test]
    fn sign_changing_v_is_rejected() {
        let v = catalog("sine_mode", &[2.0]).unwrap();
        let r = admissible_pair(
            &v,
            &v,
            &unit(),
            &PointSet::default_for(&unit()),
            p2(),
            false,
        )
        .unwrap();
        assert!(!r.is_admissible());
        assert!(r
            .violations
            .iter()
            .any(|v| v.condition == "v > 0" && v.point[0] > 0.5));
        assert!(matches!(
            r.into_result(),
            Err(Error::AdmissibilityViolation { .. })
        ));
    }

    #[test]
    fn p_below_two_forces_strict_u() {
        let u = catalog("poly", &[0.0, 0.0, 1.0]).unwrap() - 0.25; // zero at x = 0.5
        let v = catalog("sine_mode", &[1.0]).unwrap();
        let samples = PointSet::new(1, vec![vec![0.5], vec![0.7]]).unwrap();
        let lax = admissible_pair(&u, &v, &unit(), &samples, p2(), false).unwrap();
        assert!(lax.is_admissible());
        let strict = admissible_pair(
            &u,
            &v,
            &unit(),
            &samples,
            ExponentPair::new(1.5).unwrap(),
            false,
        )
        .unwrap();
        assert_eq!(strict.violations.len(), 1);
        assert_eq!(strict.violations[0].condition, "u > 0");
    }

    #[test]
    fn nonlinearity_conditions() {
        let v = catalog("sine_mode", &[1.0]).unwrap();
        let samples = PointSet::grid(&unit(), 50);
        let mut r = admissible_pair(&v, &v, &unit(), &samples, p2(), false).unwrap();
        check_nonlinearity(&mut r, &NonlinearityProfile::linear(), &v, &samples, p2()).unwrap();
        assert!(r.is_admissible());
        assert_eq!(r.min_c1_gap, Some(0.0));
        let sp = NonlinearityProfile::parse("softplus", p2()).unwrap();
        check_nonlinearity(&mut r, &sp, &v, &samples, p2()).unwrap();
        assert!(r.violations.iter().any(|v| v.condition == "f'' <= 0"));
    }
}
