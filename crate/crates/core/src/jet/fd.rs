use serde::Serialize;

use super::FieldExpr;
use crate::error::{Error, Result};

/// Largest absolute discrepancies between jet derivatives and central
/// differences.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdReport {
    pub max_abs_gradient_err: f64,
    pub max_abs_hessian_err: f64,
}

/// Compares the jet of `expr` at `x` against central differences of step `h`.
pub fn fd_crosscheck(expr: &FieldExpr, x: &[f64], h: f64) -> Result<FdReport> {
    if !(h > 0.0) {
        return Err(Error::InvalidInput(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let jet = expr.jet(x)?;
    let n = expr.dim();
    let f = |offsets: &[(usize, f64)]| -> Result<f64> {
        let mut y = x.to_vec();
        for &(i, d) in offsets {
            y[i] += d;
        }
        expr.eval(&y)
    };
    let f0 = jet.value();
    let mut grad_err = 0.0f64;
    let mut hess_err = 0.0f64;
    for i in 0..n {
        let fp = f(&[(i, h)])?;
        let fm = f(&[(i, -h)])?;
        let g = (fp - fm) / (2.0 * h);
        grad_err = grad_err.max((g - jet.gradient()[i]).abs());
        let hii = (fp - 2.0 * f0 + fm) / (h * h);
        hess_err = hess_err.max((hii - jet.hessian(i, i)).abs());
        for j in (i + 1)..n {
            let fpp = f(&[(i, h), (j, h)])?;
            let fpm = f(&[(i, h), (j, -h)])?;
            let fmp = f(&[(i, -h), (j, h)])?;
            let fmm = f(&[(i, -h), (j, -h)])?;
            let hij = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            hess_err = hess_err.max((hij - jet.hessian(i, j)).abs());
        }
    }
    Ok(FdReport {
        max_abs_gradient_err: grad_err,
        max_abs_hessian_err: hess_err,
    })
}
