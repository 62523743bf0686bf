use picone_core::corpus::{
    corpus_1d, corpus_2d, sample_points, unit_interval, unit_rectangle, IdentityPair,
};
use picone_core::picone::{
    dunninger_power_discrepancy, eval_dunninger_p2, NonlinearForm, NonlinearIdentity, PowerIdentity,
};
use picone_core::{Domain, ExponentPair, FieldExpr, NonlinearityProfile};

const PS: [f64; 5] = [1.5, 2.0, 2.5, 3.0, 4.0];

fn sweeps() -> Vec<(Domain, Vec<IdentityPair>)> {
    vec![
        (unit_interval(), corpus_1d()),
        (unit_rectangle(), corpus_2d()),
    ]
}

fn pair(p: f64) -> ExponentPair {
    ExponentPair::new(p).unwrap()
}

/// The three nonlinearities of the sweep, each with the `v` it is applied to.
fn profiles(v: &FieldExpr, p: ExponentPair) -> Vec<(NonlinearityProfile, FieldExpr)> {
    vec![
        (NonlinearityProfile::linear(), v.clone()),
        (NonlinearityProfile::power(p), v.clone()),
        (
            NonlinearityProfile::parse("sqrt", p).unwrap(),
            v.clone() + 0.5,
        ),
    ]
}

#[test]
fn power_identity_balances_and_is_nonnegative() {
    for (domain, pairs) in sweeps() {
        let samples = sample_points(&domain, 500);
        for pr in &pairs {
            for p in PS {
                let id = PowerIdentity::new(&pr.u, &pr.v, pair(p)).unwrap();
                for x in samples.iter() {
                    let e = id.eval(x).unwrap();
                    assert!(e.admissible, "{} {x:?}", pr.name);
                    assert!(e.normalized_residual() <= 1e-10, "{} p={p} {e:?}", pr.name);
                    for t in [e.lhs, e.term_i, e.term_ii, e.term_iii] {
                        assert!(t >= -1e-12 * e.scale(), "{} p={p} {e:?}", pr.name);
                    }
                }
            }
        }
    }
}

#[test]
fn proportional_pairs_have_vanishing_lhs() {
    for (domain, pairs) in sweeps() {
        let samples = sample_points(&domain, 200);
        for pr in &pairs {
            for alpha in [0.1, 1.0, 7.0] {
                let u = alpha * pr.v.clone();
                for p in PS {
                    let id = PowerIdentity::new(&u, &pr.v, pair(p)).unwrap();
                    for x in samples.iter() {
                        let e = id.eval(x).unwrap();
                        assert!(
                            e.lhs.abs() <= 1e-11 * e.scale(),
                            "{} alpha={alpha} p={p} {e:?}",
                            pr.name
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn rederived_nonlinear_identity_balances() {
    for (domain, pairs) in sweeps() {
        let samples = sample_points(&domain, 100);
        for pr in &pairs {
            for p in PS {
                for (f, v) in profiles(&pr.v, pair(p)) {
                    let id = NonlinearIdentity::new(&pr.u, &v, &f, pair(p)).unwrap();
                    for x in samples.iter() {
                        let e = id.eval(x, NonlinearForm::Rederived).unwrap();
                        assert!(
                            e.normalized_residual() <= 1e-10,
                            "{} f={} p={p} {e:?}",
                            pr.name,
                            f.label()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn printed_form_discrepancy_matches_closed_form() {
    let mut nonzero = 0;
    for (domain, pairs) in sweeps() {
        let samples = sample_points(&domain, 50);
        for pr in &pairs {
            for p in [2.5, 3.0, 4.0] {
                let f = NonlinearityProfile::linear();
                let id = NonlinearIdentity::new(&pr.u, &pr.v, &f, pair(p)).unwrap();
                for x in samples.iter() {
                    let printed = id.eval(x, NonlinearForm::Printed).unwrap();
                    let redo = id.eval(x, NonlinearForm::Rederived).unwrap();
                    let got = printed.lhs - redo.lhs;
                    let (uj, vj) = (pr.u.jet(x).unwrap(), pr.v.jet(x).unwrap());
                    let lap_v = vj.laplacian();
                    let coeff = p * (p - 1.0) - p * (p - 2.0);
                    let want = -0.5
                        * coeff
                        * lap_v.abs().powf(p - 2.0)
                        * lap_v
                        * uj.value().powf(p - 2.0)
                        * uj.grad_norm_sq()
                        / vj.value();
                    // Relative agreement where the diagnostic stands above rounding of L itself.
                    let tol = if want.abs() > 1e-6 * redo.scale() {
                        1e-8 * want.abs()
                    } else {
                        1e-12 * redo.scale()
                    };
                    assert!(
                        (got - want).abs() <= tol,
                        "{} p={p}: {got} vs {want}",
                        pr.name
                    );
                    assert!(
                        (printed.residual - want).abs() <= tol.max(1e-10 * printed.scale()),
                        "{} p={p}",
                        pr.name
                    );
                    if want.abs() > 1e-6 {
                        nonzero += 1;
                    }
                }
            }
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn power_nonlinearity_reduces_to_power_identity() {
    for (domain, pairs) in sweeps() {
        let samples = sample_points(&domain, 200);
        for pr in &pairs {
            for p in PS {
                let power = PowerIdentity::new(&pr.u, &pr.v, pair(p)).unwrap();
                let nl = NonlinearIdentity::new(
                    &pr.u,
                    &pr.v,
                    &NonlinearityProfile::power(pair(p)),
                    pair(p),
                )
                .unwrap();
                for x in samples.iter() {
                    let (a, b) = (power.rhs(x).unwrap(), nl.rhs(x).unwrap());
                    assert!(
                        (a - b).abs() <= 1e-13 * a.abs().max(b.abs()).max(1.0),
                        "{} p={p}: {a} vs {b}",
                        pr.name
                    );
                }
            }
        }
    }
}

#[test]
fn dunninger_form_balances_and_matches_power_form() {
    for (domain, pairs) in sweeps() {
        let samples = sample_points(&domain, 500);
        for pr in &pairs {
            for x in samples.iter() {
                let e = eval_dunninger_p2(&pr.u, &pr.v, x).unwrap();
                assert!(e.normalized_residual() <= 1e-12, "{} {e:?}", pr.name);
                assert!(
                    dunninger_power_discrepancy(&pr.u, &pr.v, x).unwrap() <= 1e-12,
                    "{}",
                    pr.name
                );
            }
        }
    }
}
