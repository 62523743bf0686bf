use super::{check_pair, grad_defect_sq, PiconePointEval, PowerIdentity, Variant};
use crate::error::{Error, Result};
use crate::fields::ExponentPair;
use crate::jet::FieldExpr;

/// The `p = 2` identity with quotient `u^2 / v`.
#[derive(Debug, Clone)]
pub struct DunningerIdentity {
    u: FieldExpr,
    v: FieldExpr,
    quotient: FieldExpr,
}

impl DunningerIdentity {
    pub fn new(u: &FieldExpr, v: &FieldExpr) -> Result<Self> {
        check_pair(u, v)?;
        Ok(DunningerIdentity {
            u: u.clone(),
            v: v.clone(),
            quotient: u.powi(2) / v.clone(),
        })
    }

    pub fn u(&self) -> &FieldExpr {
        &self.u
    }

    pub fn v(&self) -> &FieldExpr {
        &self.v
    }

    /// `(Δu - (u/v)Δv)^2 - (2Δv/v)|∇u - (u/v)∇v|^2` against `(Δu)^2 - Δ(u^2/v)Δv`.
    pub fn eval(&self, x: &[f64]) -> Result<PiconePointEval> {
        let uj = self.u.jet(x)?;
        let vj = self.v.jet(x)?;
        let (u, v) = (uj.value(), vj.value());
        if v <= 0.0 {
            return Err(Error::domain(&self.v, format!("v = {v} is not positive")));
        }
        let (lap_u, lap_v) = (uj.laplacian(), vj.laplacian());
        let ratio = u / v;
        let term_i = (lap_u - ratio * lap_v).powi(2);
        let term_iii = -2.0 * lap_v / v * grad_defect_sq(&uj, ratio, &vj);
        let rhs = lap_u * lap_u - self.quotient.jet(x)?.laplacian() * lap_v;
        let admissible = u >= 0.0 && lap_v < 0.0;
        Ok(PiconePointEval::new(
            x,
            [term_i, 0.0, term_iii],
            rhs,
            admissible,
            Variant::DunningerP2,
        ))
    }
}

pub fn eval_dunninger_p2(u: &FieldExpr, v: &FieldExpr, x: &[f64]) -> Result<PiconePointEval> {
    DunningerIdentity::new(u, v)?.eval(x)
}

/// Largest normalized difference between the `p = 2` power identity and the
/// Dunninger form, over both sides.
pub fn dunninger_power_discrepancy(u: &FieldExpr, v: &FieldExpr, x: &[f64]) -> Result<f64> {
    let d = eval_dunninger_p2(u, v, x)?;
    let p = PowerIdentity::new(u, v, ExponentPair::new(2.0)?)?.eval(x)?;
    let scale = d.scale().max(p.scale());
    Ok(((d.lhs - p.lhs).abs()).max((d.rhs - p.rhs).abs()) / scale)
}
