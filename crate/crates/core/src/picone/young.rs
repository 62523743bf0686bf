use crate::error::{Error, Result};
use crate::fields::ExponentPair;

/// `a^p + (p-1) b^q - p a b` for `a >= 0`, `b = exp(ln_b) >= 0`.
///
/// This is `p` times the Young gap. Near the equality case `a^p = b^q` the
/// direct formula loses every digit to cancellation; writing
/// `r = b^q / a^p = exp(e)` the excess is
/// `p a^p (expm1(e)/q - expm1(e/q))`, whose rounding error is relative to
/// `e` rather than to `a^p`.
pub(crate) fn young_excess(a: f64, ln_b: f64, p: ExponentPair) -> f64 {
    let (p, q) = (p.p(), p.q());
    if a == 0.0 {
        return (p - 1.0) * (q * ln_b).exp();
    }
    if ln_b == f64::NEG_INFINITY {
        return a.powf(p);
    }
    let e = q * ln_b - p * a.ln();
    if e.abs() <= 1.0 {
        let t = a.powf(p);
        let h = e.exp_m1() / q - (e / q).exp_m1();
        (p * t * h).max(0.0)
    } else {
        a.powf(p) + (p - 1.0) * (q * ln_b).exp() - p * a * ln_b.exp()
    }
}

/// `a^p/p + b^q/q - ab`, nonnegative for `a, b >= 0` and zero exactly when
/// `a^p = b^q`.
pub fn young_gap(a: f64, b: f64, p: ExponentPair) -> Result<f64> {
    if a < 0.0 || b < 0.0 || a.is_nan() || b.is_nan() {
        return Err(Error::NegativeInput(format!(
            "Young's inequality needs a, b >= 0 (got {a}, {b})"
        )));
    }
    Ok(young_excess(a, b.ln(), p) / p.p())
}
