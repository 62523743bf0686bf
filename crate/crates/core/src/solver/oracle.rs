use super::banded::BandedSym;
use super::eigen::{positive_weight, EigenResult};
use super::grid::{Grid, GridFunction};
use crate::error::{Error, Result};
use crate::jet::FieldExpr;
use crate::quadrature::Domain;

const ORACLE_TOL: f64 = 1e-12;
const ORACLE_MAX_ITERS: usize = 10_000;

/// Rows of the negative Dirichlet Laplacian `-A` as `(column, value)` lists.
fn stencil_rows(grid: &Grid) -> Vec<Vec<(usize, f64)>> {
    let n = grid.n();
    (0..grid.len())
        .map(|idx| {
            let mut row = vec![(idx, 0.0)];
            for k in 0..grid.dim() {
                let stride = n.pow(k as u32);
                let inv = 1.0 / (grid.h(k) * grid.h(k));
                row[0].1 += 2.0 * inv;
                let i = (idx / stride) % n;
                if i > 0 {
                    row.push((idx - stride, -inv));
                }
                if i + 1 < n {
                    row.push((idx + stride, -inv));
                }
            }
            row
        })
        .collect()
}

/// The matrix `A^2` of the Navier biharmonic form, assembled entry by entry.
pub fn biharmonic_matrix(grid: &Grid) -> BandedSym {
    let rows = stencil_rows(grid);
    let bw = if grid.dim() == 1 { 2 } else { 2 * grid.n() };
    let mut m = BandedSym::zeros(grid.len(), bw);
    for (i, row) in rows.iter().enumerate() {
        for &(j, a_ij) in row {
            for &(k, a_jk) in &rows[j] {
                if k <= i {
                    m.add(i, k, a_ij * a_jk);
                }
            }
        }
    }
    m
}

/// Smallest eigenvalue of `B x = λ W x` (`W` diagonal, positive) by inverse
/// iteration on `B + σ W`. `energy(x)` must return `xᵀ B x`; computing it as
/// `|A x|^2` avoids the cancellation of forming `xᵀ A² x` from `A²`'s entries.
fn inverse_iteration(
    b: &BandedSym,
    w: &[f64],
    shift: f64,
    start: Vec<f64>,
    energy: impl Fn(&[f64]) -> f64,
) -> Result<(f64, Vec<f64>, Vec<f64>)> {
    let mut shifted = b.clone();
    for (i, wi) in w.iter().enumerate() {
        shifted.add(i, i, shift * wi);
    }
    let chol = shifted.cholesky()?;
    let rayleigh = |x: &[f64]| {
        let den: f64 = x.iter().zip(w).map(|(a, b)| a * a * b).sum();
        energy(x) / den
    };
    let mut x = start;
    let mut lambda = rayleigh(&x);
    let mut history = vec![lambda];
    for _ in 0..ORACLE_MAX_ITERS {
        let mut y: Vec<f64> = x.iter().zip(w).map(|(a, b)| a * b).collect();
        chol.solve_in_place(&mut y);
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::IterationFailure(
                "inverse iteration produced a degenerate vector".into(),
            ));
        }
        y.iter_mut().for_each(|v| *v /= norm);
        let next = rayleigh(&y);
        history.push(next);
        x = y;
        let done = (next - lambda).abs() <= ORACLE_TOL * next.abs().max(1.0);
        lambda = next;
        if done {
            return Ok((lambda, x, history));
        }
    }
    Err(Error::IterationFailure(format!(
        "inverse iteration did not reach tolerance {ORACLE_TOL:e} in {ORACLE_MAX_ITERS} steps"
    )))
}

fn stencil_energy(grid: &Grid, x: &[f64]) -> f64 {
    let mut ax = vec![0.0; x.len()];
    grid.apply_laplacian(x, &mut ax);
    ax.iter().map(|v| v * v).sum()
}

fn start_vector(grid: &Grid) -> Vec<f64> {
    (0..grid.len())
        .map(|i| {
            grid.point(i)
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let (a, b) = grid.domain().axis(k);
                    (std::f64::consts::PI * (c - a) / (b - a)).sin()
                })
                .product()
        })
        .collect()
}

/// Smallest eigenvalue of `A^2 u = λ g u` on the `n`-node grid, the exact
/// discrete answer at `p = 2`.
pub fn p2_oracle(domain: &Domain, g: &FieldExpr, n: usize) -> Result<EigenResult> {
    let grid = Grid::new(domain, n)?;
    let w = positive_weight(&grid, g)?;
    let b = biharmonic_matrix(&grid);
    let (lambda, mut x, history) = inverse_iteration(&b, &w, 0.0, start_vector(&grid), |x| {
        stencil_energy(&grid, x)
    })?;
    let c = grid.center_index();
    let norm: f64 = x.iter().zip(&w).map(|(v, wi)| wi * v * v).sum::<f64>() * grid.cell_volume();
    let s = x[c].signum() / norm.sqrt();
    x.iter_mut().for_each(|v| *v *= s);
    Ok(EigenResult {
        lambda,
        iterations: history.len() - 1,
        grad_norm: 0.0,
        converged: true,
        history,
        eigenfunction: GridFunction::new(&grid, x)?,
    })
}

/// Smallest eigenvalue of `A^2 - diag(a f'(0))`, the `p = 2` linearization
/// at the zero solution.
pub fn linearized_min_eigenvalue(
    a: &FieldExpr,
    fprime0: f64,
    domain: &Domain,
    n: usize,
) -> Result<f64> {
    let grid = Grid::new(domain, n)?;
    let s: Vec<f64> = grid
        .sample(a)?
        .into_values()
        .into_iter()
        .map(|ai| ai * fprime0)
        .collect();
    let mut b = biharmonic_matrix(&grid);
    for (i, si) in s.iter().enumerate() {
        b.add(i, i, -si);
    }
    // Shift so that B + σ I is positive definite: λ_min(B) > -max(s).
    let smax = s.iter().cloned().fold(0.0f64, f64::max);
    let ones = vec![1.0; grid.len()];
    let energy = |x: &[f64]| {
        stencil_energy(&grid, x) - x.iter().zip(&s).map(|(v, si)| si * v * v).sum::<f64>()
    };
    let (lambda, _, _) = inverse_iteration(&b, &ones, smax + 1.0, start_vector(&grid), energy)?;
    Ok(lambda)
}
