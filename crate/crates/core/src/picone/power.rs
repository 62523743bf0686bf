use super::young::young_excess;
use super::{check_pair, grad_defect_sq, lap_weight, u_weight, PiconePointEval, Variant};
use crate::error::{Error, Result};
use crate::fields::ExponentPair;
use crate::jet::FieldExpr;

/// The power identity with quotient `u^p / v^(p-1)`.
#[derive(Debug, Clone)]
pub struct PowerIdentity {
    u: FieldExpr,
    v: FieldExpr,
    p: ExponentPair,
    quotient: FieldExpr,
}

impl PowerIdentity {
    pub fn new(u: &FieldExpr, v: &FieldExpr, p: ExponentPair) -> Result<Self> {
        check_pair(u, v)?;
        Ok(PowerIdentity {
            u: u.clone(),
            v: v.clone(),
            p,
            quotient: u.pow(p.p()) / v.pow(p.p() - 1.0),
        })
    }

    pub fn u(&self) -> &FieldExpr {
        &self.u
    }

    pub fn v(&self) -> &FieldExpr {
        &self.v
    }

    pub fn p(&self) -> ExponentPair {
        self.p
    }

    /// `R = |Δu|^p - Δ(u^p / v^(p-1)) |Δv|^(p-2) Δv`.
    pub fn rhs(&self, x: &[f64]) -> Result<f64> {
        let p = self.p.p();
        let vj = self.v.jet(x)?;
        if vj.value() <= 0.0 {
            return Err(Error::domain(
                &self.v,
                format!("v = {} is not positive", vj.value()),
            ));
        }
        let lap_v = vj.laplacian();
        let flux = lap_weight(lap_v, self.p)? * lap_v;
        let lap_u = self.u.jet(x)?.laplacian();
        let lap_q = self.quotient.jet(x)?.laplacian();
        Ok(lap_u.abs().powf(p) - lap_q * flux)
    }

    /// `L` split into the Young group, the sign group and the gradient group.
    pub fn eval(&self, x: &[f64]) -> Result<PiconePointEval> {
        let p = self.p.p();
        let uj = self.u.jet(x)?;
        let vj = self.v.jet(x)?;
        let (u, v) = (uj.value(), vj.value());
        if v <= 0.0 {
            return Err(Error::domain(&self.v, format!("v = {v} is not positive")));
        }
        let (lap_u, lap_v) = (uj.laplacian(), vj.laplacian());
        let w = lap_weight(lap_v, self.p)?;
        let ratio = u / v;

        // |Δu|^p + (p-1)(u/v)^p |Δv|^p - p (u/v)^(p-1) |Δv|^(p-1) |Δu|
        let ln_b = (p - 1.0) * (ratio * lap_v.abs()).ln();
        let term_i = young_excess(lap_u.abs(), ln_b, self.p);
        // p (u/v)^(p-1) |Δv|^(p-2) (|Δu||Δv| - ΔuΔv)
        let term_ii = p * ratio.powf(p - 1.0) * w * (lap_u.abs() * lap_v.abs() - lap_u * lap_v);
        // -p(p-1) u^(p-2) v^(1-p) Δv |Δv|^(p-2) |∇u - (u/v)∇v|^2
        let term_iii = -p
            * (p - 1.0)
            * u_weight(&self.u, u, self.p)?
            * v.powf(1.0 - p)
            * lap_v
            * w
            * grad_defect_sq(&uj, ratio, &vj);

        let rhs = self.rhs(x)?;
        let admissible = (if p < 2.0 { u > 0.0 } else { u >= 0.0 }) && lap_v < 0.0;
        Ok(PiconePointEval::new(
            x,
            [term_i, term_ii, term_iii],
            rhs,
            admissible,
            Variant::Power,
        ))
    }
}

pub fn eval_r_power(u: &FieldExpr, v: &FieldExpr, x: &[f64], p: ExponentPair) -> Result<f64> {
    PowerIdentity::new(u, v, p)?.rhs(x)
}

pub fn eval_l_power(
    u: &FieldExpr,
    v: &FieldExpr,
    x: &[f64],
    p: ExponentPair,
) -> Result<PiconePointEval> {
    PowerIdentity::new(u, v, p)?.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::catalog;
    use crate::picone::eval_dunninger_p2;

    fn pair(p: f64) -> ExponentPair {
        ExponentPair::new(p).unwrap()
    }

    fn sine() -> FieldExpr {
        catalog("sine_mode", &[1.0]).unwrap()
    }

    fn bubble() -> FieldExpr {
        catalog("bubble", &[]).unwrap()
    }

    #[test]
    fn rhs_vanishes_for_proportional_pairs() {
        let v = sine();
        for p in [1.5, 2.0, 3.0] {
            for x in [0.2, 0.5, 0.81] {
                let r = eval_r_power(&v, &v, &[x], pair(p)).unwrap();
                assert!(r.abs() < 1e-11, "u = v, p = {p}: {r}");
                let r2 = eval_r_power(&(2.0 * v.clone()), &v, &[x], pair(p)).unwrap();
                assert!(r2.abs() < 1e-10, "u = 2v, p = {p}: {r2}");
            }
        }
    }

    #[test]
    fn bubble_over_sine_at_p3() {
        let e = eval_l_power(&bubble(), &sine(), &[0.37], pair(3.0)).unwrap();
        assert!(e.rhs >= 0.0);
        assert!(e.normalized_residual() <= 1e-10, "{e:?}");
        assert!(e.admissible);
    }

    #[test]
    fn proportional_pair_has_zero_lhs() {
        let v = sine();
        let u = 0.7 * v.clone();
        for p in [1.5, 2.0, 2.5, 4.0] {
            let e = eval_l_power(&u, &v, &[0.42], pair(p)).unwrap();
            assert!(e.lhs.abs() / e.scale() <= 1e-11, "p = {p}: {e:?}");
        }
    }

    #[test]
    fn matches_dunninger_at_p2() {
        let e = eval_l_power(&bubble(), &sine(), &[0.25], pair(2.0)).unwrap();
        let d = eval_dunninger_p2(&bubble(), &sine(), &[0.25]).unwrap();
        assert!((e.lhs - d.rhs).abs() <= 1e-12 * e.scale());
    }

    #[test]
    fn rejects_nonpositive_v() {
        let v = catalog("sine_mode", &[2.0]).unwrap();
        let err = eval_l_power(&bubble(), &v, &[0.75], pair(2.0)).unwrap_err();
        assert!(matches!(err, Error::Domain { .. }));
    }

    #[test]
    fn singular_when_lap_v_vanishes_below_p2() {
        let v = catalog("poly", &[1.0, 1.0]).unwrap(); // linear: Δv = 0
        let err = eval_r_power(&bubble(), &v, &[0.5], pair(1.5)).unwrap_err();
        assert!(matches!(err, Error::SingularEvaluation(_)));
        assert!(eval_r_power(&bubble(), &v, &[0.5], pair(2.5)).is_ok());
    }

    #[test]
    fn rhs_is_p_homogeneous_in_u() {
        let (u, v) = (bubble(), sine());
        for p in [1.5, 2.0, 3.5] {
            let base = eval_r_power(&u, &v, &[0.3], pair(p)).unwrap();
            let scaled = eval_r_power(&(3.0 * u.clone()), &v, &[0.3], pair(p)).unwrap();
            let want = 3f64.powf(p) * base;
            assert!(
                (scaled - want).abs() <= 1e-12 * want.abs().max(1.0),
                "p={p}"
            );
        }
    }
}
