use std::f64::consts::PI;

use picone_core::fields::{catalog, nonlinearity_c1_gap, CatalogEntry};
use picone_core::jet::fd_crosscheck;
use picone_core::picone::{eval_l_power, eval_r_power, young_gap};
use picone_core::{ExponentPair, FieldExpr, NonlinearityProfile};
use proptest::prelude::*;

/// Random smooth fields in two variables built from sums, products, sines,
/// cosines and bounded exponentials.
fn arb_expr() -> impl Strategy<Value = FieldExpr> {
    let leaf = prop_oneof![
        Just(FieldExpr::coord(0)),
        Just(FieldExpr::coord(1)),
        (-2.0f64..2.0).prop_map(FieldExpr::constant),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            inner.clone().prop_map(|a| a.sin()),
            inner.clone().prop_map(|a| a.cos()),
            inner.prop_map(|a| a.sin().exp()),
        ]
    })
    .prop_map(|e| e.with_dim(2).unwrap())
}

fn point() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 2)
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jets_are_linear(e1 in arb_expr(), e2 in arb_expr(), a in -3.0f64..3.0, x in point()) {
        let combo = a * e1.clone() + e2.clone();
        let (j, j1, j2) = (combo.jet(&x).unwrap(), e1.jet(&x).unwrap(), e2.jet(&x).unwrap());
        prop_assert!(close(j.value(), a * j1.value() + j2.value(), 1e-13));
        for i in 0..2 {
            prop_assert!(close(j.gradient()[i], a * j1.gradient()[i] + j2.gradient()[i], 1e-13));
            for k in 0..2 {
                prop_assert!(close(j.hessian(i, k), a * j1.hessian(i, k) + j2.hessian(i, k), 1e-13));
            }
        }
    }

    #[test]
    fn product_rule_and_symmetry(e1 in arb_expr(), e2 in arb_expr(), x in point()) {
        let prod = e1.clone() * e2.clone();
        let (j, j1, j2) = (prod.jet(&x).unwrap(), e1.jet(&x).unwrap(), e2.jet(&x).unwrap());
        for i in 0..2 {
            let want = j1.value() * j2.gradient()[i] + j2.value() * j1.gradient()[i];
            prop_assert!(close(j.gradient()[i], want, 1e-13));
        }
        prop_assert_eq!(j.hessian(0, 1), j.hessian(1, 0));
    }

    #[test]
    fn jets_agree_with_finite_differences(e in arb_expr(), x in point()) {
        let r = fd_crosscheck(&e, &x, 1e-4).unwrap();
        let mag = e.jet(&x).unwrap().gradient().iter().fold(1.0f64, |m, g| m.max(g.abs()));
        prop_assert!(r.max_abs_gradient_err <= 1e-4 * mag.max(1.0) * 10.0);
    }

    #[test]
    fn sine_modes_are_laplacian_eigenfunctions(k in 1u32..6, x in 0.01f64..0.99) {
        let s = catalog("sine_mode", &[k as f64]).unwrap();
        let j = s.jet(&[x]).unwrap();
        let want = -((k as f64) * PI).powi(2) * j.value();
        prop_assert!((j.laplacian() - want).abs() <= 1e-12 * want.abs().max(1e-3));
    }

    #[test]
    fn young_gap_is_nonnegative(a in 0.0f64..10.0, b in 0.0f64..10.0, p in 1.05f64..8.0) {
        prop_assert!(young_gap(a, b, ExponentPair::new(p).unwrap()).unwrap() >= 0.0);
    }

    #[test]
    fn young_gap_vanishes_on_equality(a in 0.01f64..5.0, p in 1.05f64..8.0) {
        let pair = ExponentPair::new(p).unwrap();
        let b = a.powf(p / pair.q());
        prop_assert!(young_gap(a, b, pair).unwrap().abs() <= 1e-14 * a.powf(p).max(1.0));
    }

    #[test]
    fn power_c1_gap_is_zero(y in 0.01f64..10.0, idx in 0usize..4) {
        let p = ExponentPair::new([1.5, 2.0, 3.0, 4.0][idx]).unwrap();
        let gap = nonlinearity_c1_gap(&NonlinearityProfile::power(p), y, p).unwrap();
        prop_assert!(gap.abs() <= 1e-12 * y.max(1.0).powf(p.p()));
    }

    #[test]
    fn power_rhs_is_p_homogeneous(c in 0.1f64..5.0, p in 1.2f64..5.0, x in 0.02f64..0.98) {
        let u = catalog("bubble", &[]).unwrap() + catalog("sine_mode", &[1.0]).unwrap();
        let v = catalog("sine_mode", &[1.0]).unwrap();
        let pair = ExponentPair::new(p).unwrap();
        let base = eval_r_power(&u, &v, &[x], pair).unwrap();
        let scaled = eval_r_power(&(c * u.clone()), &v, &[x], pair).unwrap();
        prop_assert!(close(scaled, c.powf(p) * base, 1e-12));
    }

    #[test]
    fn random_admissible_pairs_balance(a in 0.1f64..3.0, b in -0.5f64..0.5, x in 0.02f64..0.98) {
        // u = a x(1-x) + b x^2 (1-x)^2 stays positive; v = sin(pi x).
        let u = catalog("poly", &[0.0, a, -a]).unwrap() + b * catalog("bubble", &[]).unwrap();
        let v = catalog("sine_mode", &[1.0]).unwrap();
        let e = eval_l_power(&u, &v, &[x], ExponentPair::new(2.5).unwrap()).unwrap();
        prop_assert!(e.admissible);
        prop_assert!(e.normalized_residual() <= 1e-10);
        prop_assert!(e.lhs >= -1e-12 * e.scale());
    }
}

#[test]
fn navier_admissible_entries_vanish_with_curvature() {
    for k in 1..5 {
        let entry = CatalogEntry::SineMode {
            k,
            a: 0.0,
            length: 1.5,
        };
        assert!(entry.navier_admissible());
        let f = entry.build();
        for x in [0.0, 1.5] {
            let j = f.jet(&[x]).unwrap();
            assert!(j.value().abs() < 1e-14);
            assert!(j.laplacian().abs() < 1e-12);
        }
    }
}
