//! Second-order forward-mode differentiation of closed-form fields.
//!
//! A [`Jet2`] carries the value, gradient and Hessian of a scalar field at one
//! point. Jets are propagated through an expression tree ([`FieldExpr`]) by the
//! chain rule, so every derivative is exact up to floating-point rounding.

mod expr;
mod fd;
mod parse;

pub use expr::{eval_jet, FieldExpr};
pub use fd::{fd_crosscheck, FdReport};
pub use parse::{parse_expr, parse_expr_with_alias};

use serde::Serialize;

/// Largest spatial dimension supported by jets and domains.
pub const MAX_DIM: usize = 2;

/// Value, gradient and Hessian of a scalar field at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Jet2 {
    dim: usize,
    value: f64,
    gradient: [f64; MAX_DIM],
    hessian: [[f64; MAX_DIM]; MAX_DIM],
}

impl Jet2 {
    pub fn constant(dim: usize, c: f64) -> Self {
        debug_assert!((1..=MAX_DIM).contains(&dim));
        Jet2 {
            dim,
            value: c,
            gradient: [0.0; MAX_DIM],
            hessian: [[0.0; MAX_DIM]; MAX_DIM],
        }
    }

    /// The coordinate function `x_axis` evaluated at `x`.
    pub fn coordinate(dim: usize, axis: usize, x: f64) -> Self {
        let mut j = Jet2::constant(dim, x);
        j.gradient[axis] = 1.0;
        j
    }

    /// Builds a jet from raw parts, mirroring the upper triangle of `hessian`.
    pub fn from_parts(
        dim: usize,
        value: f64,
        gradient: &[f64],
        hessian: [[f64; MAX_DIM]; MAX_DIM],
    ) -> Self {
        let mut j = Jet2::constant(dim, value);
        j.gradient[..dim].copy_from_slice(&gradient[..dim]);
        for r in 0..dim {
            for c in r..dim {
                j.hessian[r][c] = hessian[r][c];
                j.hessian[c][r] = hessian[r][c];
            }
        }
        j
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn gradient(&self) -> &[f64] {
        &self.gradient[..self.dim]
    }

    pub fn hessian(&self, r: usize, c: usize) -> f64 {
        self.hessian[r][c]
    }

    pub fn hessian_matrix(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|r| self.hessian[r][..self.dim].to_vec())
            .collect()
    }

    pub fn laplacian(&self) -> f64 {
        (0..self.dim).map(|i| self.hessian[i][i]).sum()
    }

    pub fn grad_dot(&self, other: &Jet2) -> f64 {
        (0..self.dim)
            .map(|i| self.gradient[i] * other.gradient[i])
            .sum()
    }

    pub fn grad_norm_sq(&self) -> f64 {
        self.grad_dot(self)
    }

    fn zip_with(
        &self,
        other: &Jet2,
        value: f64,
        mut entry: impl FnMut(usize, usize) -> f64,
        mut grad: impl FnMut(usize) -> f64,
    ) -> Jet2 {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = Jet2::constant(self.dim, value);
        for r in 0..self.dim {
            out.gradient[r] = grad(r);
            for c in r..self.dim {
                let h = entry(r, c);
                out.hessian[r][c] = h;
                out.hessian[c][r] = h;
            }
        }
        out
    }

    pub fn add(&self, o: &Jet2) -> Jet2 {
        self.zip_with(
            o,
            self.value + o.value,
            |r, c| self.hessian[r][c] + o.hessian[r][c],
            |i| self.gradient[i] + o.gradient[i],
        )
    }

    pub fn sub(&self, o: &Jet2) -> Jet2 {
        self.zip_with(
            o,
            self.value - o.value,
            |r, c| self.hessian[r][c] - o.hessian[r][c],
            |i| self.gradient[i] - o.gradient[i],
        )
    }

    pub fn mul(&self, o: &Jet2) -> Jet2 {
        let (a, b) = (self.value, o.value);
        self.zip_with(
            o,
            a * b,
            |r, c| {
                a * o.hessian[r][c]
                    + b * self.hessian[r][c]
                    + self.gradient[r] * o.gradient[c]
                    + o.gradient[r] * self.gradient[c]
            },
            |i| a * o.gradient[i] + b * self.gradient[i],
        )
    }

    pub fn scale(&self, s: f64) -> Jet2 {
        self.chain(s * self.value, s, 0.0)
    }

    /// Applies a scalar function with value `f`, first derivative `d1` and
    /// second derivative `d2` at `self.value()`.
    pub fn chain(&self, f: f64, d1: f64, d2: f64) -> Jet2 {
        let mut out = Jet2::constant(self.dim, f);
        for r in 0..self.dim {
            out.gradient[r] = d1 * self.gradient[r];
            for c in r..self.dim {
                let h = d1 * self.hessian[r][c] + d2 * self.gradient[r] * self.gradient[c];
                out.hessian[r][c] = h;
                out.hessian[c][r] = h;
            }
        }
        out
    }

    /// Reciprocal `1/self`; the caller guarantees a nonzero value.
    pub fn recip(&self) -> Jet2 {
        let a = self.value;
        let inv = 1.0 / a;
        self.chain(inv, -inv * inv, 2.0 * inv * inv * inv)
    }
}

/// Trace of the Hessian.
pub fn laplacian(j: &Jet2) -> f64 {
    j.laplacian()
}
