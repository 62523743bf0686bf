use serde::Serialize;

use super::{status, Report, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::fields::{resolve_field, NonlinearityProfile};
use crate::jet::FieldExpr;
use crate::quadrature::{integrate, Domain, PointSet, QuadratureRule};
use crate::solver::{linearized_min_eigenvalue, p2_oracle};

/// `morse_index_zero` holds when the smallest eigenvalue is at least this.
pub const INDEX_FLOOR: f64 = -1e-9;
/// `|f(0)|` above this counts as `f(0) != 0`.
const ZERO_TOL: f64 = 1e-14;
/// Relative slack of the quadratic-form check.
const FORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct MorseSetup {
    pub a: FieldExpr,
    pub f: NonlinearityProfile,
    pub domain: Domain,
    /// Interior grid nodes per axis.
    pub n: usize,
    pub rule: QuadratureRule,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MorseConfig {
    pub a: String,
    pub f: String,
    pub domain: String,
    pub n: usize,
    pub panels: usize,
    pub gauss_order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticFormRow {
    pub w: String,
    /// `∫|Δw|^2`.
    pub energy: f64,
    /// `∫ a f'(0) w^2`.
    pub potential: f64,
    pub margin: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MorseReport {
    pub schema: u32,
    pub config: MorseConfig,
    pub f_at_zero: f64,
    pub fprime_at_zero: f64,
    pub fprime0_le_one: bool,
    pub f0_is_zero: bool,
    pub a_positive: bool,
    /// `f'(s) >= 1` on sampled `s` in `(0, 10]`; reported, not enforced.
    pub fprime_ge_one_on_samples: bool,
    /// Smallest eigenvalue of the discrete `Δ^2 - a f'(0)`.
    pub min_eigenvalue: f64,
    /// Smallest eigenvalue of the discrete `Δ^2` on the same grid.
    pub biharmonic_lambda1: f64,
    pub morse_index_zero: bool,
    pub quadratic_form: Vec<QuadraticFormRow>,
    pub passed: bool,
}

impl Report for MorseReport {
    fn name(&self) -> &str {
        "morse"
    }

    fn passed(&self) -> bool {
        self.passed
    }

    fn summary(&self) -> String {
        format!(
            "{} morse: min linearized eigenvalue {:.10} (lambda1 {:.10}, f'(0) = {}), index zero: {}, {} quadratic-form rows",
            status(self.passed),
            self.min_eigenvalue,
            self.biharmonic_lambda1,
            self.fprime_at_zero,
            self.morse_index_zero,
            self.quadratic_form.len()
        )
    }

    fn data_csv(&self) -> String {
        let mut out = String::from("w,energy,potential,margin\n");
        for r in &self.quadratic_form {
            out.push_str(&format!(
                "\"{}\",{},{},{}\n",
                r.w, r.energy, r.potential, r.margin
            ));
        }
        out
    }
}

/// Test functions for the quadratic form: three sine modes, the bubble and the
/// parabola.
fn form_corpus(domain: &Domain) -> Result<Vec<FieldExpr>> {
    let mut out = Vec::new();
    for spec in [
        "sine_mode 1",
        "sine_mode 2",
        "sine_mode 3",
        "bubble",
        "poly",
    ] {
        let e = if spec == "poly" {
            domain
                .axes()
                .iter()
                .enumerate()
                .map(|(k, &(a, b))| {
                    let x = FieldExpr::coord(k);
                    (x.clone() - a) * (b - x)
                })
                .reduce(|acc, t| acc * t)
                .expect("domains have at least one axis")
                .with_dim(domain.dim())?
        } else {
            resolve_field(spec, domain)?
        };
        out.push(e);
    }
    Ok(out)
}

/// Linearized stability at the zero solution for `p = 2`.
pub fn run_morse(setup: &MorseSetup) -> Result<MorseReport> {
    let domain = &setup.domain;
    let a = setup.a.with_dim(domain.dim())?;
    let at0 = setup.f.eval(0.0)?;
    let (f0, fp0) = (at0.f, at0.df);
    let fprime0_le_one = fp0 <= 1.0;
    let f0_is_zero = f0.abs() <= ZERO_TOL;

    let mut a_min = f64::INFINITY;
    for x in PointSet::default_for(domain)
        .points()
        .iter()
        .chain(domain.boundary_points(16).iter())
    {
        a_min = a_min.min(a.eval(x)?);
    }
    let a_positive = a_min > 0.0;

    let mut problems = Vec::new();
    if !fprime0_le_one {
        problems.push(format!("f'(0) = {fp0} > 1"));
    }
    if !f0_is_zero {
        problems.push(format!("f(0) = {f0} != 0"));
    }
    if !a_positive {
        problems.push(format!("a reaches {a_min} <= 0"));
    }
    if !problems.is_empty() {
        return Err(Error::HypothesisViolation(problems.join("; ")));
    }

    let fprime_ge_one_on_samples = (1..=50).try_fold(true, |ok, k| -> Result<bool> {
        let s = 10f64.powf(-3.0 + 4.0 * k as f64 / 50.0);
        Ok(ok && setup.f.eval(s)?.df >= 1.0)
    })?;

    let min_eigenvalue = linearized_min_eigenvalue(&a, fp0, domain, setup.n)?;
    let biharmonic_lambda1 = p2_oracle(domain, &FieldExpr::constant(1.0), setup.n)?.lambda;
    let morse_index_zero = min_eigenvalue >= INDEX_FLOOR;

    let mut quadratic_form = Vec::new();
    for w in form_corpus(domain)? {
        let energy = integrate(|x| Ok(w.jet(x)?.laplacian().powi(2)), domain, &setup.rule)?;
        let potential = integrate(
            |x| Ok(a.eval(x)? * fp0 * w.eval(x)?.powi(2)),
            domain,
            &setup.rule,
        )?;
        let margin = energy - potential;
        quadratic_form.push(QuadraticFormRow {
            w: w.to_string(),
            energy,
            potential,
            margin,
            passed: margin >= -FORM_TOL * energy.max(1.0),
        });
    }
    let passed = morse_index_zero && quadratic_form.iter().all(|r| r.passed);
    Ok(MorseReport {
        schema: SCHEMA_VERSION,
        config: MorseConfig {
            a: setup.a.to_string(),
            f: setup.f.label().to_string(),
            domain: domain.to_string(),
            n: setup.n,
            panels: setup.rule.panels(),
            gauss_order: setup.rule.order(),
        },
        f_at_zero: f0,
        fprime_at_zero: fp0,
        fprime0_le_one,
        f0_is_zero,
        a_positive,
        fprime_ge_one_on_samples,
        min_eigenvalue,
        biharmonic_lambda1,
        morse_index_zero,
        quadratic_form,
        passed,
    })
}
