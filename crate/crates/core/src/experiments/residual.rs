use crate::error::Result;
use crate::fields::ExponentPair;
use crate::jet::FieldExpr;

/// Step of the finite-difference fallback used where `Δv` vanishes.
const FD_STEP: f64 = 1e-3;

/// Pointwise evaluator of `Δ_p^2 v = Δ(|Δv|^(p-2) Δv)`.
///
/// At `p = 2` this is the jet Laplacian of the closed form of `Δv`. For other
/// `p` the flux `|Δv|^(p-2) Δv` equals `±(±Δv)^(p-1)` on the open set where
/// `Δv` keeps the sign it has at the evaluation point, so the jet Laplacian of
/// that branch is exact there. At zeros of `Δv` a fourth-order central
/// difference of the jet-exact flux is used instead.
#[derive(Debug, Clone)]
pub struct PBiharmonic {
    p: ExponentPair,
    lap: FieldExpr,
    negative: FieldExpr,
    positive: FieldExpr,
}

impl PBiharmonic {
    pub fn new(v: &FieldExpr, p: ExponentPair) -> Self {
        let lap = v.laplacian_expr();
        let r = p.p() - 1.0;
        PBiharmonic {
            p,
            negative: -(-lap.clone()).pow(r),
            positive: lap.pow(r),
            lap,
        }
    }

    fn flux(&self, x: &[f64]) -> Result<f64> {
        let l = self.lap.eval(x)?;
        Ok(l.abs().powf(self.p.p() - 2.0) * l)
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if self.p.p() == 2.0 {
            return Ok(self.lap.jet(x)?.laplacian());
        }
        let l = self.lap.eval(x)?;
        if l < 0.0 {
            Ok(self.negative.jet(x)?.laplacian())
        } else if l > 0.0 {
            Ok(self.positive.jet(x)?.laplacian())
        } else {
            self.finite_difference(x)
        }
    }

    fn finite_difference(&self, x: &[f64]) -> Result<f64> {
        let h = FD_STEP;
        let centre = self.flux(x)?;
        let mut total = 0.0;
        for k in 0..x.len() {
            let at = |s: f64| {
                let mut y = x.to_vec();
                y[k] += s * h;
                self.flux(&y)
            };
            let d2 = (-at(2.0)? + 16.0 * at(1.0)? - 30.0 * centre + 16.0 * at(-1.0)? - at(-2.0)?)
                / (12.0 * h * h);
            total += d2;
        }
        Ok(total)
    }
}

/// `Δ_p^2 v` at `x`.
pub fn p_biharmonic(v: &FieldExpr, p: ExponentPair, x: &[f64]) -> Result<f64> {
    PBiharmonic::new(v, p).eval(x)
}
