//! Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any
//! fails. Tolerances are fixed here and are not configurable.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_rational::Rational64;
use picone_core::corpus::{
    corpus_1d, corpus_2d, sample_points, unit_interval, unit_rectangle, IdentityPair,
};
use picone_core::experiments::{
    default_candidates, run_eigen, run_hardy, run_identity, run_monotonicity, run_morse,
    run_singular_system, run_sturm, run_young, EigenSetup, HardySetup, IdentityGroup,
    IdentitySetup, Lemma, MonotonicitySetup, MorseSetup, SingularSetup, SturmSetup, YoungSetup,
};
use picone_core::jet::parse_expr;
use picone_core::picone::{
    dunninger_power_discrepancy, eval_dunninger_p2, eval_l_power, eval_r_power,
    printed_minus_rederived, NonlinearForm, NonlinearIdentity,
};
use picone_core::solver::{p2_oracle, EigenOptions};
use picone_core::{Domain, Error, ExponentPair, FieldExpr, NonlinearityProfile, QuadratureRule};

const PS: [f64; 5] = [1.5, 2.0, 2.5, 3.0, 4.0];
const POINTS: usize = 500;
const N: usize = 399;

type Outcome = Result<(bool, String), Error>;

fn exp(p: f64) -> ExponentPair {
    ExponentPair::new(p).expect("valid exponent")
}

fn expr(s: &str) -> FieldExpr {
    parse_expr(s).expect("fixture parses")
}

fn groups() -> Vec<(Domain, Vec<IdentityPair>)> {
    vec![
        (unit_interval(), corpus_1d()),
        (unit_rectangle(), corpus_2d()),
    ]
}

fn opts(n: usize) -> EigenOptions {
    EigenOptions {
        n,
        ..EigenOptions::default()
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn identity_suite() -> Outcome {
    let start = Instant::now();
    let r = run_identity(&IdentitySetup {
        lemmas: vec![Lemma::Power],
        groups: groups()
            .into_iter()
            .map(|(domain, pairs)| IdentityGroup { domain, pairs })
            .collect(),
        ps: PS.map(exp).to_vec(),
        nonlinearity: "linear".into(),
        form: NonlinearForm::Rederived,
        points: POINTS,
    })?;
    let secs = start.elapsed().as_secs_f64();
    let pairs: usize = groups().iter().map(|(_, p)| p.len()).sum();
    let ok = pairs >= 6 && r.max_residual <= 1e-10 && r.min_lhs >= -1e-12 && secs <= 10.0;
    Ok((
        ok,
        format!(
            "{} rows, max |L-R|/scale {:.2e} (<= 1e-10), min L/scale {:.2e} (>= -1e-12), {secs:.2} s (<= 10 s)",
            r.rows.len(),
            r.max_residual,
            r.min_lhs
        ),
    ))
}

fn rigidity() -> Outcome {
    let mut worst = 0.0f64;
    for (domain, pairs) in groups() {
        let pts = sample_points(&domain, POINTS);
        for pair in &pairs {
            for alpha in [0.1, 1.0, 7.0] {
                let u = FieldExpr::constant(alpha) * pair.v.clone();
                for &p in &PS {
                    for x in pts.iter() {
                        let e = eval_l_power(&u, &pair.v, x, exp(p))?;
                        worst = worst.max(e.lhs.abs() / e.scale());
                    }
                }
            }
        }
    }
    Ok((
        worst <= 1e-11,
        format!("max |L|/scale for u = alpha v: {worst:.2e} (<= 1e-11)"),
    ))
}

/// `-(p/2) |Δv|^(p-2) Δv u^(p-2) |∇u|^2 / f(v)` from raw jets.
fn printed_gap_closed_form(
    u: &FieldExpr,
    v: &FieldExpr,
    f: &NonlinearityProfile,
    x: &[f64],
    p: f64,
) -> Result<f64, Error> {
    let (uj, vj) = (u.jet(x)?, v.jet(x)?);
    let lap_v = vj.laplacian();
    let grad_u_sq: f64 = uj.gradient().iter().map(|g| g * g).sum();
    let fv = f.eval(vj.value())?.f;
    Ok(-0.5 * p * lap_v.abs().powf(p - 2.0) * lap_v * uj.value().powf(p - 2.0) * grad_u_sq / fv)
}

fn nonlinear() -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_gap = 0.0f64;
    let mut nonzero_gap = false;
    for (domain, pairs) in groups() {
        let pts = sample_points(&domain, POINTS);
        for pair in &pairs {
            for &p in &PS {
                for (name, shift) in [("linear", 0.0), ("power", 0.0), ("sqrt", 0.5)] {
                    let f = NonlinearityProfile::parse(name, exp(p))?;
                    let v = pair.v.clone() + FieldExpr::constant(shift);
                    let id = NonlinearIdentity::new(&pair.u, &v, &f, exp(p))?;
                    for x in pts.iter() {
                        let e = id.eval(x, NonlinearForm::Rederived)?;
                        worst = worst.max(e.normalized_residual());
                        let got = printed_minus_rederived(&pair.u, &v, &f, x, exp(p))?;
                        let want = printed_gap_closed_form(&pair.u, &v, &f, x, p)?;
                        let grad_u = pair.u.jet(x)?.grad_norm_sq();
                        if p != 2.0 && grad_u > 1e-12 && got.abs() > 0.0 {
                            nonzero_gap = true;
                        }
                        let err = if want.abs() > 1e-6 * e.scale() {
                            rel(got, want)
                        } else {
                            (got - want).abs() / e.scale()
                        };
                        worst_gap = worst_gap.max(err);
                    }
                }
            }
        }
    }
    Ok((
        worst <= 1e-10 && nonzero_gap && worst_gap <= 1e-8,
        format!(
            "max |L-R|/scale {worst:.2e} (<= 1e-10), printed gap nonzero: {nonzero_gap}, closed-form mismatch {worst_gap:.2e} (<= 1e-8)"
        ),
    ))
}

fn reduction() -> Outcome {
    let mut worst = 0.0f64;
    for (domain, pairs) in groups() {
        let pts = sample_points(&domain, POINTS);
        for pair in &pairs {
            for &p in &PS {
                let id = NonlinearIdentity::new(
                    &pair.u,
                    &pair.v,
                    &NonlinearityProfile::power(exp(p)),
                    exp(p),
                )?;
                for x in pts.iter() {
                    let want = eval_r_power(&pair.u, &pair.v, x, exp(p))?;
                    worst = worst.max((id.rhs(x)? - want).abs() / want.abs().max(1.0));
                }
            }
        }
    }
    Ok((
        worst <= 1e-13,
        format!("max relative |R_nonlinear - R_power| with f = y^(p-1): {worst:.2e} (<= 1e-13)"),
    ))
}

fn dunninger() -> Outcome {
    let (mut residual, mut agreement) = (0.0f64, 0.0f64);
    for (domain, pairs) in groups() {
        let pts = sample_points(&domain, POINTS);
        for pair in &pairs {
            for x in pts.iter() {
                residual =
                    residual.max(eval_dunninger_p2(&pair.u, &pair.v, x)?.normalized_residual());
                agreement = agreement.max(dunninger_power_discrepancy(&pair.u, &pair.v, x)?);
            }
        }
    }
    Ok((
        residual <= 1e-12 && agreement <= 1e-12,
        format!("max |L-R|/scale {residual:.2e} (<= 1e-12), power-form discrepancy {agreement:.2e} (<= 1e-12)"),
    ))
}

fn young() -> Outcome {
    let r = run_young(&YoungSetup {
        random: 10_000,
        equality: 1_000,
        seed: 0,
    })?;
    Ok((
        r.passed && r.min_random_gap >= 0.0 && r.max_equality_gap <= 1e-14,
        format!(
            "min gap over 1e4 samples {:.2e} (>= 0), max equality gap over 1e3 {:.2e} (<= 1e-14)",
            r.min_random_gap, r.max_equality_gap
        ),
    ))
}

fn eigen() -> Outcome {
    let start = Instant::now();
    let pi4 = PI.powi(4);
    let mut ok = true;
    let mut parts = Vec::new();
    for (b, g, want) in [
        (1.0, "1", Some(pi4)),
        (2.0, "1", Some(pi4 / 16.0)),
        (1.0, "(+ 1 (* 0.5 x))", None),
    ] {
        let domain = Domain::interval(0.0, b)?;
        let g = expr(g);
        let r = run_eigen(&EigenSetup {
            domain,
            g: g.clone(),
            p: exp(2.0),
            opts: opts(N),
        })?;
        let oracle = p2_oracle(&domain, &g, N)?.lambda;
        let diff = rel(r.result.lambda, oracle);
        ok &= diff <= 1e-8;
        let mut part = format!(
            "(0,{b}) g={g}: lambda {:.4}, oracle diff {diff:.1e}",
            r.result.lambda
        );
        if let Some(w) = want {
            let e = rel(r.result.lambda, w);
            ok &= e <= 0.01;
            part.push_str(&format!(", off analytic by {:.3}%", 100.0 * e));
        }
        parts.push(part);
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs <= 30.0;
    Ok((ok, format!("{}; {secs:.2} s (<= 30 s)", parts.join("; "))))
}

fn monotonicity() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [2.0, 3.0] {
        let r = run_monotonicity(&MonotonicitySetup {
            domain1: unit_interval(),
            domain2: Domain::interval(0.0, 2.0)?,
            g: FieldExpr::constant(1.0),
            p: exp(p),
            opts: opts(N),
        })?;
        ok &= r.passed && r.strict_gap > r.tolerance;
        let mut part = format!("p={p}: gap {:.4} (tol {:.1e})", r.strict_gap, r.tolerance);
        if p == 2.0 {
            let want = 15.0 * PI.powi(4) / 16.0;
            let e = rel(r.strict_gap, want);
            ok &= e <= 0.02;
            part.push_str(&format!(", off 15 pi^4/16 by {:.3}%", 100.0 * e));
        }
        parts.push(part);
    }
    Ok((ok, parts.join("; ")))
}

type Poly = Vec<Rational64>;

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Rational64::from_integer(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn deriv(a: &Poly) -> Poly {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rational64::from_integer(k as i64))
        .collect()
}

fn integral01(a: &Poly) -> Rational64 {
    a.iter()
        .enumerate()
        .map(|(k, c)| c / Rational64::from_integer(k as i64 + 1))
        .sum()
}

fn to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn hardy() -> Outcome {
    let u: Poly = [0, 0, 1, -2, 1]
        .iter()
        .map(|&k| Rational64::from_integer(k))
        .collect();
    let u2 = deriv(&deriv(&u));
    let energy = integral01(&mul(&u2, &u2));
    let mass = integral01(&mul(&u, &u));
    let exact = energy == Rational64::new(4, 5) && mass == Rational64::new(1, 630);
    let pi4 = PI.powi(4);
    let r = run_hardy(&HardySetup {
        v: expr("(sin (* pi x))"),
        f: NonlinearityProfile::linear(),
        g: FieldExpr::constant(1.0),
        lambda: pi4,
        p: exp(2.0),
        corpus: vec![
            expr("(* (^ x 2) (^ (- 1 x) 2))"),
            expr("(sin (* pi x))"),
            expr("(sin (* 2 pi x))"),
            expr("(* x (- 1 x) (sin (* pi x)))"),
        ],
        domain: unit_interval(),
        rule: QuadratureRule::default(),
    })?;
    let b = &r.rows[0];
    let e_lhs = rel(b.lhs, to_f64(energy));
    let e_rhs = rel(b.rhs, to_f64(mass) * pi4);
    let e_q = rel(b.quotient, to_f64(energy / mass));
    let margins = r.rows.iter().all(|row| row.margin >= 0.0);
    Ok((
        exact && r.hypothesis_holds && e_lhs <= 1e-9 && e_rhs <= 1e-9 && e_q <= 1e-9 && margins,
        format!(
            "exact 4/5 and 1/630: {exact}, quotient {:.9} vs 504 vs pi^4 {pi4:.4}, rel errors {e_lhs:.1e} {e_rhs:.1e} (<= 1e-9), all margins >= 0: {margins}",
            b.quotient
        ),
    ))
}

fn sturm() -> Outcome {
    let pi4 = PI.powi(4);
    let base = SturmSetup {
        u: expr("(sin (* pi x))"),
        f1: FieldExpr::constant(pi4),
        f2: FieldExpr::constant(pi4 + 1.0),
        p: exp(2.0),
        f: NonlinearityProfile::linear(),
        candidates: default_candidates(&unit_interval()),
        domain: unit_interval(),
        rule: QuadratureRule::default(),
    };
    let a = run_sturm(&base)?.contradiction_integral;
    let b = run_sturm(&SturmSetup {
        f2: FieldExpr::constant(pi4) + FieldExpr::coord(0),
        ..base
    })?
    .contradiction_integral;
    let (ea, eb) = ((a + 0.5).abs(), (b + 0.25).abs());
    Ok((
        ea <= 1e-10 && eb <= 1e-10,
        format!(
            "f2 = f1 + 1: {a:.12} (err {ea:.1e}), f2 = f1 + x: {b:.12} (err {eb:.1e}), tol 1e-10"
        ),
    ))
}

fn singular() -> Outcome {
    let setup = SingularSetup {
        v: expr("(sin (* pi x))"),
        c1: PI.powi(-4),
        f: NonlinearityProfile::linear(),
        p: exp(2.0),
        domain: unit_interval(),
        rule: QuadratureRule::default(),
    };
    let r = run_singular_system(&setup)?;
    let e = rel(r.c1, PI.powi(-4));
    let perturbed = run_singular_system(&SingularSetup {
        c1: 1.01 * PI.powi(-4),
        ..setup
    });
    let rejected = !perturbed.is_ok_and(|r| r.passed);
    Ok((
        e <= 1e-12 && r.residual_u_equation <= 1e-8 && r.residual_v_equation <= 1e-8 && rejected,
        format!(
            "c1 rel error {e:.1e} (<= 1e-12), residuals {:.1e} {:.1e} (<= 1e-8), 1.01 c1 rejected: {rejected}",
            r.residual_u_equation, r.residual_v_equation
        ),
    ))
}

fn morse() -> Outcome {
    let r = run_morse(&MorseSetup {
        a: FieldExpr::constant(1.0),
        f: NonlinearityProfile::linear(),
        domain: unit_interval(),
        n: N,
        rule: QuadratureRule::default(),
    })?;
    let h = 1.0 / (N as f64 + 1.0);
    let mu1 = 2.0 / (h * h) * (1.0 - (PI * h).cos());
    let vs_oracle = (r.min_eigenvalue - (r.biharmonic_lambda1 - 1.0)).abs();
    let vs_exact = (r.min_eigenvalue - (mu1 * mu1 - 1.0)).abs();
    Ok((
        vs_oracle <= 1e-8 && vs_exact <= 1e-8 && r.min_eigenvalue > 0.0,
        format!(
            "min eigenvalue {:.10}, vs oracle lambda1 - 1 {vs_oracle:.1e}, vs mu1^2 - 1 {vs_exact:.1e} (<= 1e-8), positive",
            r.min_eigenvalue
        ),
    ))
}

fn run_suite(dir: &Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_picone-lab"))
        .env_remove("PICONE_LAB_OUT")
        .args(["suite", "--out"])
        .arg(dir)
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(format!("suite exited with {:?}", status.status.code()));
    }
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok())
        .map(|e| {
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap_or_default(),
            )
        })
        .collect();
    files.sort();
    Ok(files)
}

fn determinism() -> Outcome {
    let (a, b) = (
        tempfile::tempdir().expect("temp dir"),
        tempfile::tempdir().expect("temp dir"),
    );
    match (run_suite(a.path()), run_suite(b.path())) {
        (Ok(x), Ok(y)) => {
            let same = x == y && !x.is_empty();
            Ok((
                same,
                format!("{} files per run, byte-identical: {same}", x.len()),
            ))
        }
        (Err(e), _) | (_, Err(e)) => Ok((false, e)),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("power identity suite", identity_suite),
        ("equality rigidity", rigidity),
        ("nonlinear identity", nonlinear),
        ("reduction to power identity", reduction),
        ("Dunninger form", dunninger),
        ("Young gap", young),
        ("eigenvalue fixtures", eigen),
        ("domain monotonicity", monotonicity),
        ("Hardy fixture", hardy),
        ("Sturm fixture", sturm),
        ("singular system", singular),
        ("linearized stability", morse),
        ("suite determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (ok, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} [{}] {name}: {detail}",
            i + 1,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
