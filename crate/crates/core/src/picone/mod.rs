//! Pointwise evaluation of both sides of the Picone-type identities.
//!
//! In every identity the right side `R` is built from the Laplacian of an
//! explicit quotient (`u^p / v^(p-1)`, `u^p / f(v)` or `u^2 / v`). That
//! quotient is assembled as a [`FieldExpr`] and differentiated exactly, so `R`
//! never goes through the algebraic expansion being tested. The left side `L`
//! is evaluated term by term from the jets of `u` and `v` alone.

mod dunninger;
mod eval;
mod nonlinear;
mod power;
mod young;

pub use dunninger::{dunninger_power_discrepancy, eval_dunninger_p2, DunningerIdentity};
pub use eval::{PiconePointEval, Variant, CSV_HEADER};
pub use nonlinear::{
    eval_l_nonlinear, eval_r_nonlinear, printed_minus_rederived, NonlinearForm, NonlinearIdentity,
};
pub use power::{eval_l_power, eval_r_power, PowerIdentity};
pub use young::young_gap;

use crate::error::{Error, Result};
use crate::fields::ExponentPair;
use crate::jet::{FieldExpr, Jet2};

/// Any of the identities, for sweeps and quadrature.
#[derive(Debug, Clone)]
pub enum Identity {
    Power(PowerIdentity),
    Nonlinear(NonlinearIdentity, NonlinearForm),
    Dunninger(DunningerIdentity),
}

impl Identity {
    pub fn eval(&self, x: &[f64]) -> Result<PiconePointEval> {
        match self {
            Identity::Power(id) => id.eval(x),
            Identity::Nonlinear(id, form) => id.eval(x, *form),
            Identity::Dunninger(id) => id.eval(x),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Identity::Power(id) => id.u().dim(),
            Identity::Nonlinear(id, _) => id.u().dim(),
            Identity::Dunninger(id) => id.u().dim(),
        }
    }
}

fn check_pair(u: &FieldExpr, v: &FieldExpr) -> Result<()> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            got: v.dim(),
        });
    }
    Ok(())
}

/// `|Δv|^(p-2)`, which is singular at `Δv = 0` when `p < 2`.
fn lap_weight(lap_v: f64, p: ExponentPair) -> Result<f64> {
    if p.p() < 2.0 && lap_v == 0.0 {
        return Err(Error::SingularEvaluation(format!(
            "|Δv|^(p-2) with Δv = 0 and p = {}",
            p.p()
        )));
    }
    Ok(lap_v.abs().powf(p.p() - 2.0))
}

/// `u^(p-2)`, requiring `u > 0` when `p < 2`.
fn u_weight(u: &FieldExpr, value: f64, p: ExponentPair) -> Result<f64> {
    if p.p() < 2.0 && value <= 0.0 {
        return Err(Error::domain(
            u,
            format!("u^(p-2) needs u > 0 for p = {}, got u = {value}", p.p()),
        ));
    }
    Ok(value.powf(p.p() - 2.0))
}

/// `|a - s b|^2` over the gradients of two jets.
fn grad_defect_sq(a: &Jet2, s: f64, b: &Jet2) -> f64 {
    a.gradient()
        .iter()
        .zip(b.gradient())
        .map(|(ga, gb)| {
            let d = ga - s * gb;
            d * d
        })
        .sum()
}
