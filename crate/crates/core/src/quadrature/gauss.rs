use std::f64::consts::PI;

use serde::Serialize;

use super::Domain;
use crate::error::{Error, Result};

/// Composite Gauss-Legendre rule: `panels` equal panels per axis with an
/// `order`-point rule on each, tensorised over the domain's axes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureRule {
    panels: usize,
    order: usize,
    #[serde(skip)]
    nodes: Vec<f64>,
    #[serde(skip)]
    weights: Vec<f64>,
}

pub const DEFAULT_PANELS: usize = 32;
pub const DEFAULT_ORDER: usize = 5;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P_{n-1}(x).
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let (pn, pn1) = if n == 1 { (x, 1.0) } else { (p1, p0) };
            dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

impl QuadratureRule {
    pub fn new(panels: usize, order: usize) -> Result<Self> {
        if panels == 0 || !(1..=32).contains(&order) {
            return Err(Error::InvalidInput(format!(
                "quadrature needs panels >= 1 and 1 <= order <= 32 (got {panels}, {order})"
            )));
        }
        let (nodes, weights) = gauss_legendre(order);
        Ok(QuadratureRule {
            panels,
            order,
            nodes,
            weights,
        })
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Composite nodes and weights along the interval `(a, b)`.
    pub fn axis_nodes(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let width = (b - a) / self.panels as f64;
        let half = 0.5 * width;
        (0..self.panels)
            .flat_map(|k| {
                let mid = a + (k as f64 + 0.5) * width;
                self.nodes
                    .iter()
                    .zip(&self.weights)
                    .map(move |(&t, &w)| (mid + half * t, half * w))
            })
            .collect()
    }

    /// All tensor nodes and weights over `domain`, in a fixed order.
    pub fn nodes(&self, domain: &Domain) -> Vec<(Vec<f64>, f64)> {
        let axes: Vec<Vec<(f64, f64)>> = domain
            .axes()
            .iter()
            .map(|&(a, b)| self.axis_nodes(a, b))
            .collect();
        match axes.as_slice() {
            [xs] => xs.iter().map(|&(x, w)| (vec![x], w)).collect(),
            [xs, ys] => ys
                .iter()
                .flat_map(|&(y, wy)| xs.iter().map(move |&(x, wx)| (vec![x, y], wx * wy)))
                .collect(),
            _ => unreachable!(),
        }
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        QuadratureRule::new(DEFAULT_PANELS, DEFAULT_ORDER).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rules_match_closed_forms() {
        let (x, w) = gauss_legendre(2);
        let r = 1.0 / 3f64.sqrt();
        assert!((x[0] + r).abs() < 1e-15 && (x[1] - r).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15);
        let (x, w) = gauss_legendre(3);
        assert!((x[2] - 0.6f64.sqrt()).abs() < 1e-15);
        assert!((w[1] - 8.0 / 9.0).abs() < 1e-15);
        let (x, w) = gauss_legendre(1);
        assert_eq!((x[0], w[0]), (0.0, 2.0));
    }

    #[test]
    fn weights_positive_and_sum_to_measure() {
        for order in 1..=12 {
            let rule = QuadratureRule::new(7, order).unwrap();
            let d = Domain::rectangle(0.0, 1.5, -1.0, 1.0).unwrap();
            let nodes = rule.nodes(&d);
            assert!(nodes.iter().all(|(_, w)| *w > 0.0));
            let total: f64 = nodes.iter().map(|(_, w)| w).sum();
            assert!((total - d.measure()).abs() <= 1e-13 * d.measure());
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(QuadratureRule::new(0, 5).is_err());
        assert!(QuadratureRule::new(4, 0).is_err());
    }
}
