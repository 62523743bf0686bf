use serde::Serialize;

use super::{status, Report, SCHEMA_VERSION};
use crate::corpus::{sample_points, IdentityPair};
use crate::error::{Error, Result};
use crate::fields::{admissible_pair, ExponentPair, NonlinearityProfile};
use crate::picone::{
    dunninger_power_discrepancy, DunningerIdentity, NonlinearForm, NonlinearIdentity, PowerIdentity,
};
use crate::quadrature::Domain;

/// Bound on `max |L - R| / scale` for the power and nonlinear identities.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Bound on `max |L - R| / scale` for the `p = 2` identity.
pub const DUNNINGER_TOL: f64 = 1e-12;
/// Floor on `min L / scale` over admissible points.
pub const LHS_FLOOR: f64 = -1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    /// Quotient `u^p / v^(p-1)`.
    Power,
    /// Quotient `u^p / f(v)`.
    Nonlinear,
    /// The `p = 2` identity with quotient `u^2 / v`.
    Dunninger,
}

impl Lemma {
    pub fn as_str(self) -> &'static str {
        match self {
            Lemma::Power => "power",
            Lemma::Nonlinear => "nonlinear",
            Lemma::Dunninger => "dunninger",
        }
    }

    fn tolerance(self) -> f64 {
        match self {
            Lemma::Dunninger => DUNNINGER_TOL,
            _ => RESIDUAL_TOL,
        }
    }
}

impl std::str::FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "power" | "2.2" => Ok(Lemma::Power),
            "nonlinear" | "2.3" => Ok(Lemma::Nonlinear),
            "dunninger" => Ok(Lemma::Dunninger),
            _ => Err(Error::InvalidInput(format!(
                "unknown identity `{s}`; expected power, nonlinear or dunninger"
            ))),
        }
    }
}

/// Pairs sharing a domain.
#[derive(Debug, Clone)]
pub struct IdentityGroup {
    pub domain: Domain,
    pub pairs: Vec<IdentityPair>,
}

#[derive(Debug, Clone)]
pub struct IdentitySetup {
    pub lemmas: Vec<Lemma>,
    pub groups: Vec<IdentityGroup>,
    /// Exponents to sweep; the Dunninger identity always uses `p = 2`.
    pub ps: Vec<ExponentPair>,
    /// Nonlinearity spec for [`Lemma::Nonlinear`], parsed once per `p`.
    pub nonlinearity: String,
    pub form: NonlinearForm,
    /// Interior sample points per pair.
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairEcho {
    pub name: String,
    pub u: String,
    pub v: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupEcho {
    pub domain: String,
    pub pairs: Vec<PairEcho>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityConfig {
    pub lemmas: Vec<Lemma>,
    pub groups: Vec<GroupEcho>,
    pub ps: Vec<f64>,
    pub nonlinearity: Option<String>,
    pub form: Option<NonlinearForm>,
    pub points: usize,
}

/// Extremes over the samples of one `(pair, p)` combination. All values are
/// divided by the point's scale `max(|L|, |R|, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityRow {
    pub lemma: Lemma,
    pub domain: String,
    pub pair: String,
    pub p: f64,
    pub points: usize,
    pub admissible_points: usize,
    pub max_residual: f64,
    /// Over admissible points only.
    pub min_lhs: f64,
    /// Smallest of the three terms over admissible points.
    pub min_term: f64,
    /// `max |L_printed - L_rederived|` (nonlinear identity only).
    pub max_printed_gap: Option<f64>,
    /// Difference from the power identity at `p = 2` (Dunninger only).
    pub max_power_discrepancy: Option<f64>,
    pub tolerance: f64,
    /// `min_lhs >= LHS_FLOOR`. Part of `passed` except for the nonlinear
    /// identity, whose left side can be negative for `p < 2`.
    pub lhs_nonnegative: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub schema: u32,
    pub config: IdentityConfig,
    pub lhs_floor: f64,
    pub rows: Vec<IdentityRow>,
    pub max_residual: f64,
    pub min_lhs: f64,
    pub passed: bool,
}

impl Report for IdentityReport {
    fn name(&self) -> &str {
        "verify-identity"
    }

    fn passed(&self) -> bool {
        self.passed
    }

    fn summary(&self) -> String {
        format!(
            "{} identity {}: {} rows, max |L-R|/scale = {:.3e}, min L/scale = {:.3e}, {} rows with L < 0",
            status(self.passed),
            self.config.lemmas.iter().map(|l| l.as_str()).collect::<Vec<_>>().join("+"),
            self.rows.len(),
            self.max_residual,
            self.min_lhs,
            self.rows.iter().filter(|r| !r.lhs_nonnegative).count()
        )
    }

    fn data_csv(&self) -> String {
        let mut out = String::from("lemma,domain,pair,p,points,admissible_points,max_residual,min_lhs,min_term,max_printed_gap,lhs_nonnegative,passed\n");
        for r in &self.rows {
            let gap = r.max_printed_gap.map_or(String::new(), |g| g.to_string());
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.lemma.as_str(),
                r.domain,
                r.pair,
                r.p,
                r.points,
                r.admissible_points,
                r.max_residual,
                r.min_lhs,
                r.min_term,
                gap,
                r.lhs_nonnegative,
                r.passed
            ));
        }
        out
    }
}

enum Evaluator {
    Power(PowerIdentity),
    Nonlinear(NonlinearIdentity),
    Dunninger(DunningerIdentity),
}

/// Sweeps every pair and exponent over quasi-random interior points.
///
/// Each pair is first checked for `u >= 0`, `v > 0` and `-Δv > 0` on the
/// samples; a failure is returned as [`Error::AdmissibilityViolation`].
pub fn run_identity(setup: &IdentitySetup) -> Result<IdentityReport> {
    if setup.lemmas.is_empty()
        || setup.ps.is_empty()
        || setup.groups.iter().all(|g| g.pairs.is_empty())
    {
        return Err(Error::InvalidInput(
            "identity sweep needs an identity, a pair and an exponent".into(),
        ));
    }
    let mut rows = Vec::new();
    for &lemma in &setup.lemmas {
        for group in &setup.groups {
            sweep_group(setup, lemma, group, &mut rows)?;
        }
    }
    let max_residual = rows.iter().fold(0.0f64, |m, r| m.max(r.max_residual));
    let min_lhs = rows.iter().fold(f64::INFINITY, |m, r| m.min(r.min_lhs));
    let passed = rows.iter().all(|r| r.passed);
    Ok(IdentityReport {
        schema: SCHEMA_VERSION,
        config: IdentityConfig {
            lemmas: setup.lemmas.clone(),
            groups: setup
                .groups
                .iter()
                .map(|g| GroupEcho {
                    domain: g.domain.to_string(),
                    pairs: g
                        .pairs
                        .iter()
                        .map(|p| PairEcho {
                            name: p.name.clone(),
                            u: p.u.to_string(),
                            v: p.v.to_string(),
                        })
                        .collect(),
                })
                .collect(),
            ps: setup.ps.iter().map(|p| p.p()).collect(),
            nonlinearity: setup
                .lemmas
                .contains(&Lemma::Nonlinear)
                .then(|| setup.nonlinearity.clone()),
            form: setup
                .lemmas
                .contains(&Lemma::Nonlinear)
                .then_some(setup.form),
            points: setup.points,
        },
        lhs_floor: LHS_FLOOR,
        rows,
        max_residual,
        min_lhs,
        passed,
    })
}

fn sweep_group(
    setup: &IdentitySetup,
    lemma: Lemma,
    group: &IdentityGroup,
    rows: &mut Vec<IdentityRow>,
) -> Result<()> {
    let samples = sample_points(&group.domain, setup.points);
    let ps = match lemma {
        Lemma::Dunninger => vec![ExponentPair::new(2.0)?],
        _ => setup.ps.clone(),
    };
    let tol = lemma.tolerance();
    for pr in &group.pairs {
        for &p in &ps {
            admissible_pair(&pr.u, &pr.v, &group.domain, &samples, p, false)?.into_result()?;
            let eval = match lemma {
                Lemma::Power => Evaluator::Power(PowerIdentity::new(&pr.u, &pr.v, p)?),
                Lemma::Nonlinear => {
                    let f = NonlinearityProfile::parse(&setup.nonlinearity, p)?;
                    Evaluator::Nonlinear(NonlinearIdentity::new(&pr.u, &pr.v, &f, p)?)
                }
                Lemma::Dunninger => Evaluator::Dunninger(DunningerIdentity::new(&pr.u, &pr.v)?),
            };
            let mut row = IdentityRow {
                lemma,
                domain: group.domain.to_string(),
                pair: pr.name.clone(),
                p: p.p(),
                points: samples.len(),
                admissible_points: 0,
                max_residual: 0.0,
                min_lhs: f64::INFINITY,
                min_term: f64::INFINITY,
                max_printed_gap: None,
                max_power_discrepancy: None,
                tolerance: tol,
                lhs_nonnegative: false,
                passed: false,
            };
            for x in samples.iter() {
                let e = match &eval {
                    Evaluator::Power(id) => id.eval(x)?,
                    Evaluator::Nonlinear(id) => {
                        let e = id.eval(x, setup.form)?;
                        let other = match setup.form {
                            NonlinearForm::Rederived => NonlinearForm::Printed,
                            NonlinearForm::Printed => NonlinearForm::Rederived,
                        };
                        let gap = (id.eval(x, other)?.lhs - e.lhs).abs() / e.scale();
                        row.max_printed_gap = Some(row.max_printed_gap.unwrap_or(0.0).max(gap));
                        e
                    }
                    Evaluator::Dunninger(id) => {
                        let d = dunninger_power_discrepancy(&pr.u, &pr.v, x)?;
                        row.max_power_discrepancy =
                            Some(row.max_power_discrepancy.unwrap_or(0.0).max(d));
                        id.eval(x)?
                    }
                };
                let s = e.scale();
                row.max_residual = row.max_residual.max(e.normalized_residual());
                if e.admissible {
                    row.admissible_points += 1;
                    row.min_lhs = row.min_lhs.min(e.lhs / s);
                    row.min_term = row
                        .min_term
                        .min(e.term_i.min(e.term_ii).min(e.term_iii) / s);
                }
            }
            row.lhs_nonnegative = row.admissible_points == 0 || row.min_lhs >= LHS_FLOOR;
            row.passed = row.max_residual <= tol
                && (row.lhs_nonnegative || lemma == Lemma::Nonlinear)
                && row.max_power_discrepancy.is_none_or(|d| d <= DUNNINGER_TOL);
            rows.push(row);
        }
    }
    Ok(())
}
