use serde::Serialize;

use crate::error::{Error, Result};

/// Conjugate exponents `p` and `q = p / (p - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentPair {
    p: f64,
    q: f64,
}

impl ExponentPair {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::InvalidExponent(p));
        }
        let q = p / (p - 1.0);
        debug_assert!((1.0 / p + 1.0 / q - 1.0).abs() <= 1e-15);
        Ok(ExponentPair { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_p_at_most_one() {
        for p in [1.0, 0.5, -2.0, f64::INFINITY, f64::NAN] {
            assert!(ExponentPair::new(p).is_err());
        }
        assert_eq!(ExponentPair::new(2.0).unwrap().q(), 2.0);
        assert_eq!(ExponentPair::new(3.0).unwrap().q(), 1.5);
    }

    proptest! {
        #[test]
        fn conjugate(p in 1.001f64..50.0) {
            let e = ExponentPair::new(p).unwrap();
            prop_assert!((1.0 / e.p() + 1.0 / e.q() - 1.0).abs() <= 1e-15);
        }
    }
}
