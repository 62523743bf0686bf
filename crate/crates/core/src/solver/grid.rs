use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::FieldExpr;
use crate::quadrature::Domain;

/// Uniform grid of `n` interior nodes per axis; boundary nodes are implicit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    domain: Domain,
    n: usize,
}

impl Grid {
    pub fn new(domain: &Domain, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!(
                "grid needs at least 3 interior nodes per axis, got {n}"
            )));
        }
        Ok(Grid { domain: *domain, n })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    /// Interior nodes per axis.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of interior nodes.
    pub fn len(&self) -> usize {
        self.n.pow(self.dim() as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Spacing along `axis`.
    pub fn h(&self, axis: usize) -> f64 {
        let (a, b) = self.domain.axis(axis);
        (b - a) / (self.n + 1) as f64
    }

    /// Cell volume, the `h^n` of the discrete integrals.
    pub fn cell_volume(&self) -> f64 {
        (0..self.dim()).map(|k| self.h(k)).product()
    }

    /// Coordinates of node `idx`; in 2-D the first axis varies fastest.
    pub fn point(&self, idx: usize) -> Vec<f64> {
        (0..self.dim())
            .map(|k| {
                let i = (idx / self.n.pow(k as u32)) % self.n;
                self.domain.axis(k).0 + (i + 1) as f64 * self.h(k)
            })
            .collect()
    }

    /// Node nearest the domain centre.
    pub fn center_index(&self) -> usize {
        let mid = (self.n - 1) / 2;
        (0..self.dim()).map(|k| mid * self.n.pow(k as u32)).sum()
    }

    pub fn sample(&self, f: &FieldExpr) -> Result<GridFunction> {
        let expr = f.with_dim(self.dim())?;
        let values = (0..self.len())
            .map(|i| expr.eval(&self.point(i)))
            .collect::<Result<_>>()?;
        Ok(GridFunction {
            grid: self.clone(),
            values,
        })
    }

    /// Five-point (three-point in 1-D) Laplacian with zero Dirichlet data,
    /// written into `out`.
    pub fn apply_laplacian(&self, u: &[f64], out: &mut [f64]) {
        let n = self.n;
        out.iter_mut().for_each(|o| *o = 0.0);
        for k in 0..self.dim() {
            let stride = n.pow(k as u32);
            let inv = 1.0 / (self.h(k) * self.h(k));
            for (idx, o) in out.iter_mut().enumerate() {
                let i = (idx / stride) % n;
                let left = if i > 0 { u[idx - stride] } else { 0.0 };
                let right = if i + 1 < n { u[idx + stride] } else { 0.0 };
                *o += (left - 2.0 * u[idx] + right) * inv;
            }
        }
    }
}

/// Values on the interior nodes of a [`Grid`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridFunction {
    #[serde(skip)]
    grid: Grid,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: &Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        Ok(GridFunction {
            grid: grid.clone(),
            values,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// `x,value` rows (`x,y,value` in 2-D) with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(if self.grid.dim() == 1 {
            "x,value\n"
        } else {
            "x,y,value\n"
        });
        for (i, v) in self.values.iter().enumerate() {
            for c in self.grid.point(i) {
                out.push_str(&format!("{c},"));
            }
            out.push_str(&format!("{v}\n"));
        }
        out
    }
}

pub fn discrete_laplacian(u: &GridFunction) -> GridFunction {
    let mut out = vec![0.0; u.values.len()];
    u.grid.apply_laplacian(&u.values, &mut out);
    GridFunction {
        grid: u.grid.clone(),
        values: out,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::catalog;
    use std::f64::consts::PI;

    fn unit() -> Domain {
        Domain::interval(0.0, 1.0).unwrap()
    }

    #[test]
    fn parabola_is_exact() {
        let g = Grid::new(&unit(), 49).unwrap();
        let u = g
            .sample(&catalog("poly", &[0.0, 1.0, -1.0]).unwrap())
            .unwrap();
        for v in discrete_laplacian(&u).values() {
            assert!((v + 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn sine_is_a_discrete_eigenvector() {
        let g = Grid::new(&unit(), 199).unwrap();
        let h = g.h(0);
        let u = g.sample(&catalog("sine_mode", &[1.0]).unwrap()).unwrap();
        let lap = discrete_laplacian(&u);
        let mu = 2.0 / (h * h) * (1.0 - (PI * h).cos());
        for (l, v) in lap.values().iter().zip(u.values()) {
            assert!((l + mu * v).abs() <= 1e-9 * mu);
            assert!((l + PI * PI * v).abs() <= 1e-3 * PI * PI * v.abs().max(1e-300) + 1e-12);
        }
    }

    #[test]
    fn zero_maps_to_zero() {
        let g = Grid::new(&Domain::rectangle(0.0, 1.0, 0.0, 2.0).unwrap(), 5).unwrap();
        let u = GridFunction::new(&g, vec![0.0; 25]).unwrap();
        assert!(discrete_laplacian(&u).values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn rectangle_sine_product() {
        let d = Domain::rectangle(0.0, 1.0, 0.0, 2.0).unwrap();
        let g = Grid::new(&d, 21).unwrap();
        let f = crate::jet::parse_expr("(* (sin (* pi x0)) (sin (* 0.5 pi x1)))").unwrap();
        let u = g.sample(&f).unwrap();
        let (hx, hy) = (g.h(0), g.h(1));
        let mu = 2.0 / (hx * hx) * (1.0 - (PI * hx).cos())
            + 2.0 / (hy * hy) * (1.0 - (0.5 * PI * hy).cos());
        for (l, v) in discrete_laplacian(&u).values().iter().zip(u.values()) {
            assert!((l + mu * v).abs() <= 1e-10 * mu);
        }
        assert_eq!(g.point(g.center_index()), vec![0.5, 1.0]);
    }

    #[test]
    fn rejects_tiny_grids() {
        assert!(Grid::new(&unit(), 2).is_err());
    }
}
