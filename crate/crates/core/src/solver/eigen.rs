use serde::Serialize;

use super::banded::BandedSym;
use super::grid::{Grid, GridFunction};
use crate::error::{Error, Result};
use crate::fields::ExponentPair;
use crate::jet::FieldExpr;
use crate::quadrature::Domain;

/// Magnitude below which `|t|^(p-2) t` is evaluated at `±ε` instead.
const PHI_CLAMP: f64 = 1e-12;
/// Floor of the preconditioner weights relative to `max |Δ_h u|`.
const WEIGHT_FLOOR: f64 = 1e-6;
const ARMIJO_C: f64 = 1e-4;
const MAX_STEP: f64 = 4.0;
const MIN_STEP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenOptions {
    /// Interior nodes per axis.
    pub n: usize,
    pub max_iters: usize,
    /// Bound on `|M^-1 ∇Q| / |u|`. The quotient's error is quadratic in this
    /// quantity, and line searches on the quotient cannot resolve it much
    /// below `sqrt(eps)`.
    pub grad_tol: f64,
    pub step0: f64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            n: 199,
            max_iters: 2000,
            grad_tol: 1e-7,
            step0: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenResult {
    pub lambda: f64,
    #[serde(skip)]
    pub eigenfunction: GridFunction,
    pub iterations: usize,
    pub grad_norm: f64,
    pub converged: bool,
    /// Rayleigh quotient of every accepted iterate, starting with the initial one.
    pub history: Vec<f64>,
}

impl EigenResult {
    /// The result, or [`Error::NonConvergence`] if the tolerance was not met.
    pub fn into_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence {
                iterations: self.iterations,
                grad_norm: self.grad_norm,
            })
        }
    }
}

/// Samples `g` on the grid and requires it to be positive at every node.
pub(crate) fn positive_weight(grid: &Grid, g: &FieldExpr) -> Result<Vec<f64>> {
    let w = grid.sample(g)?.into_values();
    let min = w.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(min > 0.0) {
        return Err(Error::IndefiniteWeight { min });
    }
    Ok(w)
}

/// `-Δ_h` as a banded matrix.
pub(crate) fn negative_laplacian(grid: &Grid) -> BandedSym {
    let n = grid.n();
    let bw = if grid.dim() == 1 { 1 } else { n };
    let mut m = BandedSym::zeros(grid.len(), bw);
    for idx in 0..grid.len() {
        for k in 0..grid.dim() {
            let stride = n.pow(k as u32);
            let inv = 1.0 / (grid.h(k) * grid.h(k));
            m.add(idx, idx, 2.0 * inv);
            if (idx / stride) % n > 0 {
                m.add(idx, idx - stride, -inv);
            }
        }
    }
    m
}

fn phi(t: f64, p: f64) -> f64 {
    let a = t.abs().max(PHI_CLAMP);
    a.powf(p - 2.0) * t
}

fn p_sum(values: &[f64], weight: Option<&[f64]>, p: f64) -> f64 {
    match weight {
        Some(w) => values
            .iter()
            .zip(w)
            .map(|(v, wi)| wi * v.abs().powf(p))
            .sum(),
        None => values.iter().map(|v| v.abs().powf(p)).sum(),
    }
}

/// `Σ |Δ_h u|^p h^n / Σ g |u|^p h^n`.
pub fn rayleigh_quotient(u: &GridFunction, g: &GridFunction, p: ExponentPair) -> Result<f64> {
    if u.grid() != g.grid() {
        return Err(Error::InvalidInput(
            "u and g live on different grids".into(),
        ));
    }
    let grid = u.grid();
    let mut lap = vec![0.0; grid.len()];
    grid.apply_laplacian(u.values(), &mut lap);
    let vol = grid.cell_volume();
    let den = p_sum(u.values(), Some(g.values()), p.p()) * vol;
    if !(den > 0.0) {
        return Err(Error::ZeroDenominator);
    }
    Ok(p_sum(&lap, None, p.p()) * vol / den)
}

struct Problem<'a> {
    grid: &'a Grid,
    w: Vec<f64>,
    p: f64,
    vol: f64,
}

impl Problem<'_> {
    fn lap(&self, u: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; u.len()];
        self.grid.apply_laplacian(u, &mut out);
        out
    }

    fn quotient(&self, u: &[f64]) -> f64 {
        p_sum(&self.lap(u), None, self.p) / p_sum(u, Some(&self.w), self.p)
    }

    /// Scales to `Σ g |u|^p h^n = 1` with a positive centre value.
    fn normalize(&self, u: &mut [f64]) -> Result<()> {
        let den = p_sum(u, Some(&self.w), self.p) * self.vol;
        if !(den > 0.0) || !den.is_finite() {
            return Err(Error::ZeroDenominator);
        }
        let mut s = den.powf(-1.0 / self.p);
        if u[self.grid.center_index()] < 0.0 {
            s = -s;
        }
        u.iter_mut().for_each(|v| *v *= s);
        Ok(())
    }
}

fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Principal eigenvalue of `Δ(|Δu|^(p-2) Δu) = λ g |u|^(p-2) u` with Navier
/// conditions, by minimizing the discrete Rayleigh quotient.
///
/// Each step is a preconditioned gradient step with Armijo backtracking. The
/// preconditioner is `A^-1 W^-1 A^-1` with `A = Δ_h` and
/// `W = diag(|Δ_h u|^(p-2))` (floored), the Hessian of the energy up to the
/// factor `p(p-1)`. At `p = 2` a unit step is exactly one inverse iteration.
pub fn principal_eigenvalue(
    domain: &Domain,
    g: &FieldExpr,
    p: ExponentPair,
    opts: &EigenOptions,
) -> Result<EigenResult> {
    let grid = Grid::new(domain, opts.n)?;
    let pr = Problem {
        grid: &grid,
        w: positive_weight(&grid, g)?,
        p: p.p(),
        vol: grid.cell_volume(),
    };
    let chol = negative_laplacian(&grid).cholesky()?;

    let mut u: Vec<f64> = (0..grid.len())
        .map(|i| {
            grid.point(i)
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let (a, b) = domain.axis(k);
                    (std::f64::consts::PI * (c - a) / (b - a)).sin()
                })
                .product()
        })
        .collect();
    pr.normalize(&mut u)?;
    let mut q = pr.quotient(&u);
    let mut history = vec![q];
    let mut step = opts.step0;
    let mut grad_norm = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < opts.max_iters {
        let au = pr.lap(&u);
        let phi_au: Vec<f64> = au.iter().map(|&t| phi(t, pr.p)).collect();
        // r = ∇Q / (p h^n) at Σ g|u|^p h^n = 1
        let mut r = pr.lap(&phi_au);
        for ((ri, ui), wi) in r.iter_mut().zip(&u).zip(&pr.w) {
            *ri -= q * wi * phi(*ui, pr.p);
        }
        let floor = WEIGHT_FLOOR * au.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut d = r.clone();
        chol.solve_in_place(&mut d);
        for (di, ai) in d.iter_mut().zip(&au) {
            *di /= ai.abs().max(floor).powf(pr.p - 2.0);
        }
        chol.solve_in_place(&mut d);
        d.iter_mut().for_each(|v| *v = -*v);

        grad_norm = norm2(&d) / norm2(&u);
        if grad_norm <= opts.grad_tol {
            converged = true;
            break;
        }
        let slope = pr.p * pr.vol * r.iter().zip(&d).map(|(a, b)| a * b).sum::<f64>();
        if !(slope < 0.0) {
            break;
        }

        let mut accepted = None;
        while step >= MIN_STEP {
            let mut cand: Vec<f64> = u.iter().zip(&d).map(|(a, b)| a + step * b).collect();
            if pr.normalize(&mut cand).is_ok() {
                let qc = pr.quotient(&cand);
                if qc < q && qc <= q + ARMIJO_C * step * slope {
                    accepted = Some((cand, qc));
                    break;
                }
            }
            step *= 0.5;
        }
        // No representable decrease left: the quotient is stationary to rounding.
        let Some((cand, qc)) = accepted else { break };
        u = cand;
        q = qc;
        history.push(q);
        iterations += 1;
        step = (2.0 * step).min(MAX_STEP);
    }

    Ok(EigenResult {
        lambda: q,
        eigenfunction: GridFunction::new(&grid, u)?,
        iterations,
        grad_norm,
        converged,
        history,
    })
}
