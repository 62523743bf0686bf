use crate::error::{Error, Result};

/// Symmetric banded matrix stored by lower diagonals: `band[k][i] = M[i][i - k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedSym {
    n: usize,
    band: Vec<Vec<f64>>,
}

impl BandedSym {
    pub fn zeros(n: usize, bandwidth: usize) -> Self {
        BandedSym {
            n,
            band: vec![vec![0.0; n]; bandwidth + 1],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.band.len() - 1
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        self.band.get(i - j).map_or(0.0, |d| d[i])
    }

    /// Adds `value` at `(i, j)` and, implicitly, `(j, i)`.
    pub fn add(&mut self, i: usize, j: usize, value: f64) {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        self.band[i - j][i] += value;
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        for (k, d) in self.band.iter().enumerate() {
            for i in k..self.n {
                y[i] += d[i] * x[i - k];
                if k > 0 {
                    y[i - k] += d[i] * x[i];
                }
            }
        }
        y
    }

    /// Lower Cholesky factor; fails if the matrix is not positive definite.
    pub fn cholesky(&self) -> Result<BandedCholesky> {
        let bw = self.bandwidth();
        let mut l = self.band.clone();
        for j in 0..self.n {
            let mut d = l[0][j];
            for k in 1..=bw.min(j) {
                d -= l[k][j] * l[k][j];
            }
            if !(d > 0.0) {
                return Err(Error::IterationFailure(format!(
                    "matrix is not positive definite at row {j}"
                )));
            }
            let d = d.sqrt();
            l[0][j] = d;
            for i in j + 1..(j + bw + 1).min(self.n) {
                // L[i][j] = (M[i][j] - sum_k L[i][k] L[j][k]) / L[j][j]
                let mut s = l[i - j][i];
                for k in i.saturating_sub(bw)..j {
                    s -= l[i - k][i] * l[j - k][j];
                }
                l[i - j][i] = s / d;
            }
        }
        Ok(BandedCholesky { n: self.n, l })
    }
}

#[derive(Debug, Clone)]
pub struct BandedCholesky {
    n: usize,
    l: Vec<Vec<f64>>,
}

impl BandedCholesky {
    /// Solves `M x = b` in place.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let bw = self.l.len() - 1;
        for i in 0..self.n {
            let mut s = b[i];
            for k in 1..=bw.min(i) {
                s -= self.l[k][i] * b[i - k];
            }
            b[i] = s / self.l[0][i];
        }
        for i in (0..self.n).rev() {
            let mut s = b[i];
            for k in 1..=bw.min(self.n - 1 - i) {
                s -= self.l[k][i + k] * b[i + k];
            }
            b[i] = s / self.l[0][i];
        }
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(m: &BandedSym) -> Vec<Vec<f64>> {
        (0..m.n())
            .map(|i| (0..m.n()).map(|j| m.get(i, j)).collect())
            .collect()
    }

    #[test]
    fn solves_a_pentadiagonal_system() {
        let n = 12;
        let mut m = BandedSym::zeros(n, 2);
        for i in 0..n {
            m.add(i, i, 6.0 + i as f64 * 0.1);
            if i >= 1 {
                m.add(i, i - 1, -2.0);
            }
            if i >= 2 {
                m.add(i, i - 2, 0.5);
            }
        }
        let x: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
        let b = m.matvec(&x);
        let d = dense(&m);
        for i in 0..n {
            let bi: f64 = (0..n).map(|j| d[i][j] * x[j]).sum();
            assert!((bi - b[i]).abs() < 1e-13);
        }
        let got = m.cholesky().unwrap().solve(&b);
        for (g, w) in got.iter().zip(&x) {
            assert!((g - w).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_indefinite() {
        let mut m = BandedSym::zeros(3, 1);
        m.add(0, 0, 1.0);
        m.add(1, 1, 1.0);
        m.add(2, 2, 1.0);
        m.add(1, 0, 2.0);
        assert!(matches!(m.cholesky(), Err(Error::IterationFailure(_))));
    }
}
