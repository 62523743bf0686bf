use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::RawConfig;

/// Numerical checks of Picone identities for the p-biharmonic operator and of
/// the inequalities built on them.
///
/// Every flag can also be given as a key of the `--config` TOML file (same
/// name, e.g. `gauss-order = 7`); flags on the command line take precedence.
/// The output directory defaults to `$PICONE_LAB_OUT`, then `./reports`.
#[derive(Debug, Parser)]
#[command(name = "picone-lab", version)]
pub struct Cli {
    /// TOML file supplying defaults for any flag below.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Directory for `<name>.report.json` and `<name>.data.csv`.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,

    /// Seed of the randomized sweeps.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare both sides of an identity at interior sample points.
    VerifyIdentity(IdentityFlags),
    /// Sweep Young's inequality over random and equality cases.
    Young(YoungFlags),
    /// Hardy-type inequality from a positive supersolution.
    Hardy(HardyFlags),
    /// Sturm comparison: contradiction integral and pointwise remainder.
    Sturm(SturmFlags),
    /// Principal eigenvalue of the weighted p-biharmonic problem.
    Eigen(EigenFlags),
    /// Strict decrease of the principal eigenvalue under domain growth.
    Monotonicity(MonotonicityFlags),
    /// Proportionality of positive solutions of the singular system.
    Singular(SingularFlags),
    /// Linearized stability of the zero solution (p = 2).
    Morse(MorseFlags),
    /// Run the default acceptance suite and write every report.
    Suite,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyIdentity(_) => "verify-identity",
            Command::Young(_) => "young",
            Command::Hardy(_) => "hardy",
            Command::Sturm(_) => "sturm",
            Command::Eigen(_) => "eigen",
            Command::Monotonicity(_) => "monotonicity",
            Command::Singular(_) => "singular",
            Command::Morse(_) => "morse",
            Command::Suite => "suite",
        }
    }
}

#[derive(Debug, Args, Default)]
pub struct DomainFlags {
    /// `interval a b` or `rectangle a1 b1 a2 b2` [default: interval 0 1].
    #[arg(long)]
    pub domain: Option<String>,
}

#[derive(Debug, Args, Default)]
pub struct RuleFlags {
    /// Quadrature panels per axis [default: 32].
    #[arg(long)]
    pub panels: Option<usize>,
    /// Gauss-Legendre nodes per panel [default: 5].
    #[arg(long)]
    pub gauss_order: Option<usize>,
}

#[derive(Debug, Args, Default)]
pub struct SolverFlags {
    /// Interior grid nodes per axis [default: 199].
    #[arg(long)]
    pub n: Option<usize>,
    /// Descent iteration cap [default: 2000].
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// Stopping bound on the preconditioned gradient [default: 1e-7].
    #[arg(long)]
    pub grad_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct IdentityFlags {
    /// `power` (or 2.2), `nonlinear` (or 2.3) or `dunninger` [default: power].
    #[arg(long)]
    pub lemma: Option<String>,
    /// Exponent p > 1 (ignored by `dunninger`).
    #[arg(long)]
    pub p: Option<f64>,
    /// Field u: catalog entry or s-expression.
    #[arg(long)]
    pub u: Option<String>,
    /// Field v: catalog entry or s-expression.
    #[arg(long)]
    pub v: Option<String>,
    /// Nonlinearity f for `nonlinear` [default: linear].
    #[arg(long)]
    pub f: Option<String>,
    /// `rederived` or `printed` gradient coefficient [default: rederived].
    #[arg(long)]
    pub form: Option<String>,
    /// Interior sample points [default: 500].
    #[arg(long)]
    pub points: Option<usize>,
    #[command(flatten)]
    pub domain: DomainFlags,
}

#[derive(Debug, Args)]
pub struct YoungFlags {
    /// Random (a, b, p) samples [default: 10000].
    #[arg(long)]
    pub samples: Option<usize>,
    /// Constructed equality cases [default: 1000].
    #[arg(long)]
    pub equality_samples: Option<usize>,
}

#[derive(Debug, Args)]
pub struct HardyFlags {
    #[arg(long)]
    pub p: Option<f64>,
    /// Positive supersolution v.
    #[arg(long)]
    pub v: Option<String>,
    /// Nonlinearity f [default: linear].
    #[arg(long)]
    pub f: Option<String>,
    /// Weight g [default: 1].
    #[arg(long)]
    pub g: Option<String>,
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Test function vanishing on the boundary; repeat for several
    /// [default: bubble, sine_mode 1, sine_mode 2, sine_mode 3].
    #[arg(long)]
    pub corpus: Vec<String>,
    #[command(flatten)]
    pub domain: DomainFlags,
    #[command(flatten)]
    pub rule: RuleFlags,
}

#[derive(Debug, Args)]
pub struct SturmFlags {
    #[arg(long)]
    pub p: Option<f64>,
    /// Positive solution u of the first problem.
    #[arg(long)]
    pub u: Option<String>,
    /// Coefficient of the first problem.
    #[arg(long)]
    pub f1: Option<String>,
    /// Coefficient of the second problem, strictly above f1.
    #[arg(long)]
    pub f2: Option<String>,
    /// Nonlinearity f [default: linear].
    #[arg(long)]
    pub f: Option<String>,
    /// Positive v tested for R(u, v) >= 0; repeat for several
    /// [default: sine, parabola and their mixture on the domain].
    #[arg(long)]
    pub candidates: Vec<String>,
    #[command(flatten)]
    pub domain: DomainFlags,
    #[command(flatten)]
    pub rule: RuleFlags,
}

#[derive(Debug, Args)]
pub struct EigenFlags {
    #[arg(long)]
    pub p: Option<f64>,
    /// Positive weight g [default: 1].
    #[arg(long)]
    pub g: Option<String>,
    #[command(flatten)]
    pub domain: DomainFlags,
    #[command(flatten)]
    pub solver: SolverFlags,
}

#[derive(Debug, Args)]
pub struct MonotonicityFlags {
    #[arg(long)]
    pub p: Option<f64>,
    /// Positive weight g [default: 1].
    #[arg(long)]
    pub g: Option<String>,
    /// The larger domain [default: interval 0 2].
    #[arg(long)]
    pub domain2: Option<String>,
    #[command(flatten)]
    pub domain: DomainFlags,
    #[command(flatten)]
    pub solver: SolverFlags,
}

#[derive(Debug, Args)]
pub struct SingularFlags {
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub v: Option<String>,
    /// Ratio with u = c1 v.
    #[arg(long)]
    pub c1: Option<f64>,
    /// Nonlinearity f [default: linear].
    #[arg(long)]
    pub f: Option<String>,
    #[command(flatten)]
    pub domain: DomainFlags,
    #[command(flatten)]
    pub rule: RuleFlags,
}

#[derive(Debug, Args)]
pub struct MorseFlags {
    /// Must be 2 if given.
    #[arg(long)]
    pub p: Option<f64>,
    /// Positive coefficient a [default: 1].
    #[arg(long)]
    pub a: Option<String>,
    /// Nonlinearity f with f(0) = 0 [default: linear].
    #[arg(long)]
    pub f: Option<String>,
    /// Interior grid nodes per axis [default: 199].
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub domain: DomainFlags,
    #[command(flatten)]
    pub rule: RuleFlags,
}

fn put<T>(slot: &mut Option<T>, value: Option<T>) {
    if value.is_some() {
        *slot = value;
    }
}

fn put_list(slot: &mut Option<Vec<String>>, value: Vec<String>) {
    if !value.is_empty() {
        *slot = Some(value);
    }
}

impl DomainFlags {
    fn apply(self, raw: &mut RawConfig) {
        put(&mut raw.domain, self.domain);
    }
}

impl RuleFlags {
    fn apply(self, raw: &mut RawConfig) {
        put(&mut raw.panels, self.panels);
        put(&mut raw.gauss_order, self.gauss_order);
    }
}

impl SolverFlags {
    fn apply(self, raw: &mut RawConfig) {
        put(&mut raw.n, self.n);
        put(&mut raw.max_iters, self.max_iters);
        put(&mut raw.grad_tol, self.grad_tol);
    }
}

impl Command {
    /// Writes every flag that was given over the matching key of `raw`.
    pub fn apply(self, raw: &mut RawConfig) {
        raw.subcommand = Some(self.name().to_string());
        match self {
            Command::VerifyIdentity(f) => {
                put(&mut raw.lemma, f.lemma);
                put(&mut raw.p, f.p);
                put(&mut raw.u, f.u);
                put(&mut raw.v, f.v);
                put(&mut raw.f, f.f);
                put(&mut raw.form, f.form);
                put(&mut raw.points, f.points);
                f.domain.apply(raw);
            }
            Command::Young(f) => {
                put(&mut raw.samples, f.samples);
                put(&mut raw.equality_samples, f.equality_samples);
            }
            Command::Hardy(f) => {
                put(&mut raw.p, f.p);
                put(&mut raw.v, f.v);
                put(&mut raw.f, f.f);
                put(&mut raw.g, f.g);
                put(&mut raw.lambda, f.lambda);
                put_list(&mut raw.corpus, f.corpus);
                f.domain.apply(raw);
                f.rule.apply(raw);
            }
            Command::Sturm(f) => {
                put(&mut raw.p, f.p);
                put(&mut raw.u, f.u);
                put(&mut raw.f1, f.f1);
                put(&mut raw.f2, f.f2);
                put(&mut raw.f, f.f);
                put_list(&mut raw.candidates, f.candidates);
                f.domain.apply(raw);
                f.rule.apply(raw);
            }
            Command::Eigen(f) => {
                put(&mut raw.p, f.p);
                put(&mut raw.g, f.g);
                f.domain.apply(raw);
                f.solver.apply(raw);
            }
            Command::Monotonicity(f) => {
                put(&mut raw.p, f.p);
                put(&mut raw.g, f.g);
                put(&mut raw.domain2, f.domain2);
                f.domain.apply(raw);
                f.solver.apply(raw);
            }
            Command::Singular(f) => {
                put(&mut raw.p, f.p);
                put(&mut raw.v, f.v);
                put(&mut raw.c1, f.c1);
                put(&mut raw.f, f.f);
                f.domain.apply(raw);
                f.rule.apply(raw);
            }
            Command::Morse(f) => {
                put(&mut raw.p, f.p);
                put(&mut raw.a, f.a);
                put(&mut raw.f, f.f);
                put(&mut raw.n, f.n);
                f.domain.apply(raw);
                f.rule.apply(raw);
            }
            Command::Suite => {}
        }
    }
}
