use serde::Serialize;

use super::young::young_excess;
use super::{check_pair, lap_weight, u_weight, PiconePointEval, Variant};
use crate::error::{Error, Result};
use crate::fields::{ExponentPair, NonlinearityProfile};
use crate::jet::FieldExpr;

/// Coefficient of `|∇u|^2` inside the gradient group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum NonlinearForm {
    /// `p(p-2)`, which balances the expansion of `Δ(u^p / f(v))`.
    #[default]
    Rederived,
    /// `p(p-1)`, as the identity is usually printed.
    Printed,
}

impl NonlinearForm {
    pub fn coefficient(self, p: f64) -> f64 {
        match self {
            NonlinearForm::Rederived => p * (p - 2.0),
            NonlinearForm::Printed => p * (p - 1.0),
        }
    }

    fn variant(self) -> Variant {
        match self {
            NonlinearForm::Rederived => Variant::NonlinearRederived,
            NonlinearForm::Printed => Variant::NonlinearPrinted,
        }
    }
}

/// The identity with quotient `u^p / f(v)`.
#[derive(Debug, Clone)]
pub struct NonlinearIdentity {
    u: FieldExpr,
    v: FieldExpr,
    f: NonlinearityProfile,
    p: ExponentPair,
    f_of_v: FieldExpr,
    quotient: FieldExpr,
}

impl NonlinearIdentity {
    pub fn new(
        u: &FieldExpr,
        v: &FieldExpr,
        f: &NonlinearityProfile,
        p: ExponentPair,
    ) -> Result<Self> {
        check_pair(u, v)?;
        let f_of_v = f.compose(v)?.with_dim(v.dim())?;
        Ok(NonlinearIdentity {
            u: u.clone(),
            v: v.clone(),
            f: f.clone(),
            p,
            quotient: u.pow(p.p()) / f_of_v.clone(),
            f_of_v,
        })
    }

    pub fn u(&self) -> &FieldExpr {
        &self.u
    }

    pub fn v(&self) -> &FieldExpr {
        &self.v
    }

    pub fn f(&self) -> &NonlinearityProfile {
        &self.f
    }

    fn positive_f(&self, x: &[f64]) -> Result<f64> {
        let fv = self.f_of_v.eval(x)?;
        if fv <= 0.0 {
            return Err(Error::domain(
                &self.f_of_v,
                format!("f(v) = {fv} is not positive"),
            ));
        }
        Ok(fv)
    }

    /// `R = |Δu|^p - Δ(u^p / f(v)) |Δv|^(p-2) Δv`.
    pub fn rhs(&self, x: &[f64]) -> Result<f64> {
        self.positive_f(x)?;
        let lap_v = self.v.jet(x)?.laplacian();
        let flux = lap_weight(lap_v, self.p)? * lap_v;
        let lap_u = self.u.jet(x)?.laplacian();
        let lap_q = self.quotient.jet(x)?.laplacian();
        Ok(lap_u.abs().powf(self.p.p()) - lap_q * flux)
    }

    /// `L` as the Young group (with the `f'` lower-bound excess folded in),
    /// the gradient group and the `f''` group.
    pub fn eval(&self, x: &[f64], form: NonlinearForm) -> Result<PiconePointEval> {
        let p = self.p.p();
        let uj = self.u.jet(x)?;
        let vj = self.v.jet(x)?;
        self.positive_f(x)?;
        let fv = self.f.eval(vj.value())?;
        let (f, f1, f2) = (fv.f, fv.df, fv.d2f);
        let u = uj.value();
        let (lap_u, lap_v) = (uj.laplacian(), vj.laplacian());
        let w = lap_weight(lap_v, self.p)?;
        let flux = w * lap_v;
        let uw = u_weight(&self.u, u, self.p)?;

        let ln_b = (p - 1.0) * (u * lap_v.abs()).ln() - f.ln();
        let young = young_excess(lap_u.abs(), ln_b, self.p);
        let c1 =
            (u * lap_v.abs()).powf(p) / (f * f) * (f1 - (p - 1.0) * f.powf((p - 2.0) / (p - 1.0)));
        let sign = p * u.powf(p - 1.0) * w * (lap_u.abs() * lap_v.abs() - lap_u * lap_v) / f;
        let term_i = young + c1 + sign;

        let s = 2.0 * u * f1 / f;
        let defect: f64 = uj
            .gradient()
            .iter()
            .zip(vj.gradient())
            .map(|(gu, gv)| {
                let d = s * gv - p * gu;
                d * d
            })
            .sum();
        let term_ii = -0.5 * flux * uw / f * (defect + form.coefficient(p) * uj.grad_norm_sq());
        let term_iii = u.powf(p) * f2 * vj.grad_norm_sq() * flux / (f * f);

        let rhs = self.rhs(x)?;
        let admissible = (if p < 2.0 { u > 0.0 } else { u >= 0.0 })
            && lap_v < 0.0
            && f1 - (p - 1.0) * f.powf((p - 2.0) / (p - 1.0)) >= 0.0
            && f2 <= 0.0;
        Ok(PiconePointEval::new(
            x,
            [term_i, term_ii, term_iii],
            rhs,
            admissible,
            form.variant(),
        ))
    }
}

pub fn eval_r_nonlinear(
    u: &FieldExpr,
    v: &FieldExpr,
    f: &NonlinearityProfile,
    x: &[f64],
    p: ExponentPair,
) -> Result<f64> {
    NonlinearIdentity::new(u, v, f, p)?.rhs(x)
}

pub fn eval_l_nonlinear(
    u: &FieldExpr,
    v: &FieldExpr,
    f: &NonlinearityProfile,
    x: &[f64],
    p: ExponentPair,
    form: NonlinearForm,
) -> Result<PiconePointEval> {
    NonlinearIdentity::new(u, v, f, p)?.eval(x, form)
}

/// `L_printed - L_rederived`, which equals `-p/2 |Δv|^(p-2) Δv u^(p-2) |∇u|^2 / f(v)`.
pub fn printed_minus_rederived(
    u: &FieldExpr,
    v: &FieldExpr,
    f: &NonlinearityProfile,
    x: &[f64],
    p: ExponentPair,
) -> Result<f64> {
    let id = NonlinearIdentity::new(u, v, f, p)?;
    Ok(id.eval(x, NonlinearForm::Printed)?.lhs - id.eval(x, NonlinearForm::Rederived)?.lhs)
}
