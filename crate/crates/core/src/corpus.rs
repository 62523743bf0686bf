//! Fixed sets of admissible `(u, v)` pairs and sample points used by the
//! identity sweeps.
//!
//! Every `v` is positive with `-Δv` bounded away from zero on the sampled
//! region, and every `u` is positive there, so each pair is admissible for
//! all `p > 1`.

use crate::jet::{parse_expr, FieldExpr};
use crate::quadrature::{Domain, PointSet};

/// Distance kept from the boundary by [`sample_points`].
pub const SAMPLE_MARGIN: f64 = 0.01;

#[derive(Debug, Clone)]
pub struct IdentityPair {
    pub name: String,
    pub u: FieldExpr,
    pub v: FieldExpr,
}

fn pair(name: &str, u: &str, v: &str) -> IdentityPair {
    IdentityPair {
        name: name.to_string(),
        u: parse_expr(u).expect("corpus u parses"),
        v: parse_expr(v).expect("corpus v parses"),
    }
}

pub fn unit_interval() -> Domain {
    Domain::interval(0.0, 1.0).expect("valid interval")
}

pub fn unit_rectangle() -> Domain {
    Domain::rectangle(0.0, 1.0, 0.0, 2.0).expect("valid rectangle")
}

/// Pairs on `(0, 1)`.
pub fn corpus_1d() -> Vec<IdentityPair> {
    vec![
        pair("bubble/sine", "(* (^ x 2) (^ (- 1 x) 2))", "(sin (* pi x))"),
        pair("sine/parabola", "(sin (* pi x))", "(* x (- 1 x))"),
        pair("cubic/sine", "(* x (- 1 x) (+ 1 x))", "(sin (* pi x))"),
        pair("skew/sine", "(* (^ x 2) (- 1 x))", "(sin (* pi x))"),
        pair(
            "gauss/odd_cubic",
            "(* (exp (- (^ (/ (- x 0.5) 0.25) 2))) x (- 1 x))",
            "(- x (^ x 3))",
        ),
        pair(
            "sine_cubed/parabola",
            "(^ (sin (* pi x)) 3)",
            "(* x (- 1 x))",
        ),
        pair(
            "exp_sine/sine",
            "(* (exp x) (sin (* pi x)))",
            "(+ (sin (* pi x)) (* 0.5 x (- 1 x)))",
        ),
    ]
}

/// Pairs on `(0, 1) x (0, 2)`.
pub fn corpus_2d() -> Vec<IdentityPair> {
    let sine = "(* (sin (* pi x0)) (sin (* 0.5 pi x1)))";
    let para = "(* x0 (- 1 x0) x1 (- 2 x1))";
    let bubble = "(* (^ x0 2) (^ (- 1 x0) 2) (^ (* 0.5 x1) 2) (^ (- 1 (* 0.5 x1)) 2))";
    vec![
        pair("bubble2d/sine2d", bubble, sine),
        pair("sine2d/para2d", sine, para),
        pair("para2d/sine2d", para, sine),
        pair("bubble2d/para2d", bubble, para),
        pair(
            "mixed2d/sine2d",
            "(* (exp (* 0.3 x1)) (sin (* pi x0)) (^ (sin (* 0.5 pi x1)) 2))",
            sine,
        ),
        pair(
            "poly2d/para2d",
            "(* (^ x0 2) (- 1 x0) x1 (- 2 x1) (+ 1 x1))",
            para,
        ),
    ]
}

/// Quasi-random interior points kept [`SAMPLE_MARGIN`] away from the boundary.
pub fn sample_points(domain: &Domain, n: usize) -> PointSet {
    PointSet::halton(domain, n, SAMPLE_MARGIN)
}
