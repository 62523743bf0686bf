use std::f64::consts::PI;
use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;

use picone_core::corpus::{corpus_1d, corpus_2d, unit_interval, unit_rectangle};
use picone_core::experiments::{
    default_candidates, run_eigen, run_hardy, run_identity, run_monotonicity, run_morse,
    run_singular_system, run_sturm, run_young, EigenSetup, HardySetup, IdentityGroup,
    IdentitySetup, Lemma, MonotonicitySetup, MorseSetup, Report, SingularSetup, SturmSetup,
    YoungSetup, SCHEMA_VERSION,
};
use picone_core::jet::parse_expr;
use picone_core::picone::NonlinearForm;
use picone_core::solver::EigenOptions;
use picone_core::{Domain, Error, ExponentPair, FieldExpr, NonlinearityProfile, QuadratureRule};

use crate::config::{Job, RunConfig};

/// Process exit status; the code classes are fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitStatus {
    Pass = 0,
    CheckFailed = 1,
    Config = 2,
    Admissibility = 3,
    Numeric = 4,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn of_error(e: &Error) -> Self {
        match e {
            _ if e.is_admissibility() => ExitStatus::Admissibility,
            Error::Domain { .. } | Error::NegativeInput(_) => ExitStatus::Admissibility,
            Error::InvalidInput(_)
            | Error::InvalidExponent(_)
            | Error::InvalidDomain(_)
            | Error::UnknownCatalogEntry(_)
            | Error::CatalogParams { .. }
            | Error::Parse { .. }
            | Error::DimensionMismatch { .. } => ExitStatus::Config,
            _ => ExitStatus::Numeric,
        }
    }
}

/// A finished report, rendered to the bytes that are written.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub json: String,
    pub csv: String,
}

fn render<R: Report>(r: R) -> Rendered {
    Rendered {
        name: r.name().to_string(),
        passed: r.passed(),
        summary: r.summary(),
        json: r.to_json(),
        csv: r.data_csv(),
    }
}

/// Runs one job to a rendered report.
pub fn run_job(job: &Job) -> Result<Rendered, Error> {
    Ok(match job {
        Job::Identity(s) => render(run_identity(s)?),
        Job::Young(s) => render(run_young(s)?),
        Job::Hardy(s) => render(run_hardy(s)?),
        Job::Sturm(s) => render(run_sturm(s)?),
        Job::Eigen(s) => render(run_eigen(s)?),
        Job::Monotonicity(s) => render(run_monotonicity(s)?),
        Job::Singular(s) => render(run_singular_system(s)?),
        Job::Morse(s) => render(run_morse(s)?),
        Job::Suite => unreachable!("the suite expands into jobs"),
    })
}

fn write_rendered(dir: &Path, r: &Rendered) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(format!("{}.report.json", r.name)), &r.json)?;
    fs::write(dir.join(format!("{}.data.csv", r.name)), &r.csv)
}

fn two() -> ExponentPair {
    ExponentPair::new(2.0).expect("2 is a valid exponent")
}

fn expr(s: &str) -> FieldExpr {
    parse_expr(s).expect("suite expressions parse")
}

/// The default acceptance suite, one job per experiment.
pub fn suite_jobs(seed: u64) -> Vec<Job> {
    let unit = unit_interval();
    let sine = expr("(sin (* pi x))");
    let rule = QuadratureRule::default();
    let pi4 = PI.powi(4);
    let n = 399;
    vec![
        Job::Identity(IdentitySetup {
            lemmas: vec![Lemma::Power, Lemma::Nonlinear, Lemma::Dunninger],
            groups: vec![
                IdentityGroup {
                    domain: unit,
                    pairs: corpus_1d(),
                },
                IdentityGroup {
                    domain: unit_rectangle(),
                    pairs: corpus_2d(),
                },
            ],
            ps: [1.5, 2.0, 2.5, 3.0, 4.0]
                .map(|p| ExponentPair::new(p).expect("valid exponent"))
                .to_vec(),
            nonlinearity: "linear".into(),
            form: NonlinearForm::Rederived,
            points: 500,
        }),
        Job::Young(YoungSetup {
            seed,
            ..YoungSetup::default()
        }),
        Job::Hardy(HardySetup {
            v: sine.clone(),
            f: NonlinearityProfile::linear(),
            g: FieldExpr::constant(1.0),
            lambda: pi4,
            p: two(),
            corpus: vec![
                expr("(* (^ x 2) (^ (- 1 x) 2))"),
                sine.clone(),
                expr("(sin (* 2 pi x))"),
                expr("(* x (- 1 x) (sin (* pi x)))"),
            ],
            domain: unit,
            rule: rule.clone(),
        }),
        Job::Sturm(SturmSetup {
            u: sine.clone(),
            f1: FieldExpr::constant(pi4),
            f2: FieldExpr::constant(pi4 + 1.0),
            p: two(),
            f: NonlinearityProfile::linear(),
            candidates: default_candidates(&unit),
            domain: unit,
            rule: rule.clone(),
        }),
        Job::Eigen(EigenSetup {
            domain: unit,
            g: FieldExpr::constant(1.0),
            p: two(),
            opts: EigenOptions {
                n,
                ..EigenOptions::default()
            },
        }),
        Job::Monotonicity(MonotonicitySetup {
            domain1: unit,
            domain2: Domain::interval(0.0, 2.0).expect("valid interval"),
            g: FieldExpr::constant(1.0),
            p: two(),
            opts: EigenOptions {
                n,
                ..EigenOptions::default()
            },
        }),
        Job::Singular(SingularSetup {
            v: sine,
            c1: PI.powi(-4),
            f: NonlinearityProfile::linear(),
            p: two(),
            domain: unit,
            rule: rule.clone(),
        }),
        Job::Morse(MorseSetup {
            a: FieldExpr::constant(1.0),
            f: NonlinearityProfile::linear(),
            domain: unit,
            n,
            rule,
        }),
    ]
}

#[derive(Debug, Serialize)]
struct SuiteEntry<'a> {
    name: &'a str,
    passed: Option<bool>,
    summary: String,
}

#[derive(Debug, Serialize)]
struct SuiteReport<'a> {
    schema: u32,
    seed: u64,
    entries: Vec<SuiteEntry<'a>>,
    passed: bool,
}

const JOB_NAMES: [&str; 8] = [
    "verify-identity",
    "young",
    "hardy",
    "sturm",
    "eigen",
    "monotonicity",
    "singular",
    "morse",
];

fn run_suite(config: &RunConfig) -> ExitStatus {
    let jobs = suite_jobs(config.seed);
    let results: Vec<Result<Rendered, Error>> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|job| s.spawn(move || run_job(job)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite job panicked"))
            .collect()
    });
    let mut status = ExitStatus::Pass;
    let mut entries = Vec::new();
    for (name, result) in JOB_NAMES.iter().zip(&results) {
        match result {
            Ok(r) => {
                println!("{}", r.summary);
                if let Err(e) = write_rendered(&config.out, r) {
                    eprintln!("cannot write {name} report: {e}");
                    status = status.max(ExitStatus::Numeric);
                }
                if !r.passed {
                    status = status.max(ExitStatus::CheckFailed);
                }
                entries.push(SuiteEntry {
                    name,
                    passed: Some(r.passed),
                    summary: r.summary.clone(),
                });
            }
            Err(e) => {
                eprintln!("ERROR {name}: {e}");
                status = status.max(ExitStatus::of_error(e));
                entries.push(SuiteEntry {
                    name,
                    passed: None,
                    summary: e.to_string(),
                });
            }
        }
    }
    let passed = status == ExitStatus::Pass;
    let report = SuiteReport {
        schema: SCHEMA_VERSION,
        seed: config.seed,
        entries,
        passed,
    };
    let mut csv = String::from("name,passed\n");
    for e in &report.entries {
        csv.push_str(&format!(
            "{},{}\n",
            e.name,
            e.passed.map_or("error".to_string(), |p| p.to_string())
        ));
    }
    let mut json = serde_json::to_string_pretty(&report).expect("suite report serializes");
    json.push('\n');
    let summary = Rendered {
        name: "suite".into(),
        passed,
        summary: String::new(),
        json,
        csv,
    };
    if let Err(e) = write_rendered(&config.out, &summary) {
        eprintln!("cannot write suite report: {e}");
        return status.max(ExitStatus::Numeric);
    }
    println!(
        "{} suite: {} experiments",
        if passed { "PASS" } else { "FAIL" },
        JOB_NAMES.len()
    );
    status
}

/// Runs the configured job, writes its files and prints one summary line per
/// check.
pub fn execute(config: &RunConfig) -> ExitStatus {
    if let Job::Suite = config.job {
        return run_suite(config);
    }
    match run_job(&config.job) {
        Ok(r) => {
            println!("{}", r.summary);
            if let Err(e) = write_rendered(&config.out, &r) {
                eprintln!("cannot write {} report: {e}", r.name);
                return ExitStatus::Numeric;
            }
            if r.passed {
                ExitStatus::Pass
            } else {
                ExitStatus::CheckFailed
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitStatus::of_error(&e)
        }
    }
}
