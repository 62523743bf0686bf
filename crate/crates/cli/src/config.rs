use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::Deserialize;

use picone_core::corpus::IdentityPair;
use picone_core::experiments::{
    default_candidates, EigenSetup, HardySetup, IdentityGroup, IdentitySetup, Lemma,
    MonotonicitySetup, MorseSetup, SingularSetup, SturmSetup, YoungSetup,
};
use picone_core::fields::resolve_field;
use picone_core::picone::NonlinearForm;
use picone_core::quadrature::{DEFAULT_ORDER, DEFAULT_PANELS};
use picone_core::solver::EigenOptions;
use picone_core::{Domain, ExponentPair, FieldExpr, NonlinearityProfile, QuadratureRule};

use crate::args::Cli;

/// Environment variable naming the default output directory.
pub const OUT_ENV: &str = "PICONE_LAB_OUT";
pub const DEFAULT_OUT: &str = "reports";

/// Every key accepted in a config file, named like the flags.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RawConfig {
    pub subcommand: Option<String>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub domain: Option<String>,
    pub domain2: Option<String>,
    pub p: Option<f64>,
    pub lemma: Option<String>,
    pub form: Option<String>,
    pub points: Option<usize>,
    pub u: Option<String>,
    pub v: Option<String>,
    pub f: Option<String>,
    pub g: Option<String>,
    pub a: Option<String>,
    pub f1: Option<String>,
    pub f2: Option<String>,
    pub lambda: Option<f64>,
    pub c1: Option<f64>,
    pub corpus: Option<Vec<String>>,
    pub candidates: Option<Vec<String>>,
    pub n: Option<usize>,
    pub max_iters: Option<usize>,
    pub grad_tol: Option<f64>,
    pub panels: Option<usize>,
    pub gauss_order: Option<usize>,
    pub samples: Option<usize>,
    pub equality_samples: Option<usize>,
}

/// A rejected configuration, naming the offending key and, when it came from
/// a file, its line.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub struct ConfigError {
    pub key: Option<String>,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error")?;
        if let Some(k) = &self.key {
            write!(f, " in `{k}`")?;
        }
        if let Some(l) = self.line {
            write!(f, " (line {l})")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl ConfigError {
    fn new(key: Option<&str>, message: impl Into<String>) -> Self {
        ConfigError {
            key: key.map(str::to_string),
            line: None,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Job {
    Identity(IdentitySetup),
    Young(YoungSetup),
    Hardy(HardySetup),
    Sturm(SturmSetup),
    Eigen(EigenSetup),
    Monotonicity(MonotonicitySetup),
    Singular(SingularSetup),
    Morse(MorseSetup),
    Suite,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub job: Job,
    pub out: PathBuf,
    pub seed: u64,
}

/// Parses command-line arguments (including the program name), then any
/// config file they name, and resolves the result.
pub fn parse_config<I, T>(argv: I) -> Result<RunConfig, ConfigError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli =
        Cli::try_parse_from(argv).map_err(|e| ConfigError::new(None, e.to_string().trim_end()))?;
    from_cli(cli, std::env::var_os(OUT_ENV).map(PathBuf::from))
}

/// Resolves parsed arguments; `env_out` is the value of [`OUT_ENV`].
pub fn from_cli(cli: Cli, env_out: Option<PathBuf>) -> Result<RunConfig, ConfigError> {
    let (mut raw, source) = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                ConfigError::new(
                    Some("config"),
                    format!("cannot read {}: {e}", path.display()),
                )
            })?;
            (parse_file(&text, path)?, Some(text))
        }
        None => (RawConfig::default(), None),
    };
    if let Some(cmd) = cli.command {
        cmd.apply(&mut raw);
    }
    if cli.out.is_some() {
        raw.out = cli.out;
    }
    if cli.seed.is_some() {
        raw.seed = cli.seed;
    }
    let out = raw
        .out
        .clone()
        .or(env_out)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    let resolver = Resolver {
        raw: &raw,
        source: source.as_deref(),
    };
    resolver.resolve(out)
}

/// Parses a config file, rejecting unknown keys.
pub fn parse_file(text: &str, path: &Path) -> Result<RawConfig, ConfigError> {
    toml::from_str(text).map_err(|e| {
        let message = e.message().to_string();
        let key = message
            .split_once("unknown field `")
            .and_then(|(_, rest)| rest.split_once('`'))
            .map(|(k, _)| k.to_string());
        ConfigError {
            key,
            line: e
                .span()
                .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1),
            message: format!("{}: {message}", path.display()),
        }
    })
}

struct Resolver<'a> {
    raw: &'a RawConfig,
    source: Option<&'a str>,
}

impl Resolver<'_> {
    fn line_of(&self, key: &str) -> Option<usize> {
        self.source?
            .lines()
            .position(|l| {
                l.trim_start()
                    .strip_prefix(key)
                    .is_some_and(|rest| rest.trim_start().starts_with('='))
            })
            .map(|i| i + 1)
    }

    fn err(&self, key: &str, message: impl Into<String>) -> ConfigError {
        ConfigError {
            key: Some(key.to_string()),
            line: self.line_of(key),
            message: message.into(),
        }
    }

    fn require<T: Clone>(&self, value: &Option<T>, key: &str) -> Result<T, ConfigError> {
        value
            .clone()
            .ok_or_else(|| self.err(key, format!("missing required value `{key}`")))
    }

    fn exponent(&self) -> Result<ExponentPair, ConfigError> {
        let p = self.require(&self.raw.p, "p")?;
        ExponentPair::new(p).map_err(|e| self.err("p", e.to_string()))
    }

    fn domain_from(
        &self,
        key: &str,
        value: &Option<String>,
        default: &str,
    ) -> Result<Domain, ConfigError> {
        value
            .as_deref()
            .unwrap_or(default)
            .parse()
            .map_err(|e: picone_core::Error| self.err(key, e.to_string()))
    }

    fn domain(&self) -> Result<Domain, ConfigError> {
        self.domain_from("domain", &self.raw.domain, "interval 0 1")
    }

    fn field(&self, key: &str, spec: &str, domain: &Domain) -> Result<FieldExpr, ConfigError> {
        resolve_field(spec, domain).map_err(|e| self.err(key, format!("`{spec}`: {e}")))
    }

    fn field_or(
        &self,
        key: &str,
        value: &Option<String>,
        default: &str,
        domain: &Domain,
    ) -> Result<FieldExpr, ConfigError> {
        self.field(key, value.as_deref().unwrap_or(default), domain)
    }

    fn required_field(
        &self,
        key: &str,
        value: &Option<String>,
        domain: &Domain,
    ) -> Result<FieldExpr, ConfigError> {
        let spec = self.require(value, key)?;
        self.field(key, &spec, domain)
    }

    fn profile(&self, p: ExponentPair) -> Result<NonlinearityProfile, ConfigError> {
        let spec = self.raw.f.as_deref().unwrap_or("linear");
        NonlinearityProfile::parse(spec, p).map_err(|e| self.err("f", format!("`{spec}`: {e}")))
    }

    fn rule(&self) -> Result<QuadratureRule, ConfigError> {
        QuadratureRule::new(
            self.raw.panels.unwrap_or(DEFAULT_PANELS),
            self.raw.gauss_order.unwrap_or(DEFAULT_ORDER),
        )
        .map_err(|e| {
            self.err(
                if self.raw.panels == Some(0) {
                    "panels"
                } else {
                    "gauss-order"
                },
                e.to_string(),
            )
        })
    }

    fn grid_size(&self, default: usize) -> Result<usize, ConfigError> {
        let n = self.raw.n.unwrap_or(default);
        if n < 3 {
            return Err(self.err("n", format!("need at least 3 interior nodes, got {n}")));
        }
        Ok(n)
    }

    fn solver(&self) -> Result<EigenOptions, ConfigError> {
        let d = EigenOptions::default();
        let grad_tol = self.raw.grad_tol.unwrap_or(d.grad_tol);
        if !(grad_tol > 0.0) {
            return Err(self.err("grad-tol", "must be positive"));
        }
        Ok(EigenOptions {
            n: self.grid_size(d.n)?,
            max_iters: self.raw.max_iters.unwrap_or(d.max_iters),
            grad_tol,
            step0: d.step0,
        })
    }

    fn resolve(&self, out: PathBuf) -> Result<RunConfig, ConfigError> {
        let raw = self.raw;
        let name = self.require(&raw.subcommand, "subcommand")?;
        let job = match name.as_str() {
            "verify-identity" => {
                let lemma: Lemma = raw
                    .lemma
                    .as_deref()
                    .unwrap_or("power")
                    .parse()
                    .map_err(|e: picone_core::Error| self.err("lemma", e.to_string()))?;
                let p = match lemma {
                    Lemma::Dunninger => ExponentPair::new(2.0).expect("2 is a valid exponent"),
                    _ => self.exponent()?,
                };
                let domain = self.domain()?;
                let u = self.required_field("u", &raw.u, &domain)?;
                let v = self.required_field("v", &raw.v, &domain)?;
                let form = match raw.form.as_deref().unwrap_or("rederived") {
                    "rederived" => NonlinearForm::Rederived,
                    "printed" => NonlinearForm::Printed,
                    other => {
                        return Err(self.err(
                            "form",
                            format!("expected rederived or printed, got `{other}`"),
                        ))
                    }
                };
                let nonlinearity = raw.f.clone().unwrap_or_else(|| "linear".into());
                if lemma == Lemma::Nonlinear {
                    self.profile(p)?;
                }
                Job::Identity(IdentitySetup {
                    lemmas: vec![lemma],
                    groups: vec![IdentityGroup {
                        domain,
                        pairs: vec![IdentityPair {
                            name: "given".into(),
                            u,
                            v,
                        }],
                    }],
                    ps: vec![p],
                    nonlinearity,
                    form,
                    points: raw.points.unwrap_or(500),
                })
            }
            "young" => Job::Young(YoungSetup {
                random: raw.samples.unwrap_or(10_000),
                equality: raw.equality_samples.unwrap_or(1_000),
                seed: raw.seed.unwrap_or(0),
            }),
            "hardy" => {
                let p = self.exponent()?;
                let domain = self.domain()?;
                let default_corpus = ["bubble", "sine_mode 1", "sine_mode 2", "sine_mode 3"]
                    .map(String::from)
                    .to_vec();
                let corpus = raw
                    .corpus
                    .as_ref()
                    .unwrap_or(&default_corpus)
                    .iter()
                    .map(|s| self.field("corpus", s, &domain))
                    .collect::<Result<_, _>>()?;
                Job::Hardy(HardySetup {
                    v: self.required_field("v", &raw.v, &domain)?,
                    f: self.profile(p)?,
                    g: self.field_or("g", &raw.g, "1", &domain)?,
                    lambda: self.require(&raw.lambda, "lambda")?,
                    p,
                    corpus,
                    rule: self.rule()?,
                    domain,
                })
            }
            "sturm" => {
                let p = self.exponent()?;
                let domain = self.domain()?;
                let candidates = match &raw.candidates {
                    Some(list) => list
                        .iter()
                        .map(|s| self.field("candidates", s, &domain))
                        .collect::<Result<_, _>>()?,
                    None => default_candidates(&domain),
                };
                Job::Sturm(SturmSetup {
                    u: self.required_field("u", &raw.u, &domain)?,
                    f1: self.required_field("f1", &raw.f1, &domain)?,
                    f2: self.required_field("f2", &raw.f2, &domain)?,
                    p,
                    f: self.profile(p)?,
                    candidates,
                    rule: self.rule()?,
                    domain,
                })
            }
            "eigen" => {
                let domain = self.domain()?;
                Job::Eigen(EigenSetup {
                    g: self.field_or("g", &raw.g, "1", &domain)?,
                    p: self.exponent()?,
                    opts: self.solver()?,
                    domain,
                })
            }
            "monotonicity" => {
                let domain1 = self.domain()?;
                let domain2 = self.domain_from("domain2", &raw.domain2, "interval 0 2")?;
                if !domain1.strictly_inside(&domain2) {
                    return Err(self.err(
                        "domain2",
                        format!("{domain1} is not strictly contained in {domain2}"),
                    ));
                }
                Job::Monotonicity(MonotonicitySetup {
                    g: self.field_or("g", &raw.g, "1", &domain2)?,
                    p: self.exponent()?,
                    opts: self.solver()?,
                    domain1,
                    domain2,
                })
            }
            "singular" => {
                let p = self.exponent()?;
                let domain = self.domain()?;
                Job::Singular(SingularSetup {
                    v: self.required_field("v", &raw.v, &domain)?,
                    c1: self.require(&raw.c1, "c1")?,
                    f: self.profile(p)?,
                    p,
                    rule: self.rule()?,
                    domain,
                })
            }
            "morse" => {
                if raw.p.is_some_and(|p| p != 2.0) {
                    return Err(self.err(
                        "p",
                        "the linearized stability check is defined for p = 2 only",
                    ));
                }
                let p = ExponentPair::new(2.0).expect("2 is a valid exponent");
                let domain = self.domain()?;
                Job::Morse(MorseSetup {
                    a: self.field_or("a", &raw.a, "1", &domain)?,
                    f: self.profile(p)?,
                    n: self.grid_size(199)?,
                    rule: self.rule()?,
                    domain,
                })
            }
            "suite" => Job::Suite,
            other => return Err(self.err("subcommand", format!("unknown subcommand `{other}`"))),
        };
        Ok(RunConfig {
            job,
            out,
            seed: raw.seed.unwrap_or(0),
        })
    }
}
