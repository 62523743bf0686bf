use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// An interval or an axis-aligned rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    Interval { a: f64, b: f64 },
    Rectangle { a1: f64, b1: f64, a2: f64, b2: f64 },
}

fn check_axis(a: f64, b: f64) -> Result<()> {
    if a.is_finite() && b.is_finite() && a < b {
        Ok(())
    } else {
        Err(Error::InvalidDomain(format!("need a < b, got ({a}, {b})")))
    }
}

impl Domain {
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        check_axis(a, b)?;
        Ok(Domain::Interval { a, b })
    }

    pub fn rectangle(a1: f64, b1: f64, a2: f64, b2: f64) -> Result<Self> {
        check_axis(a1, b1)?;
        check_axis(a2, b2)?;
        Ok(Domain::Rectangle { a1, b1, a2, b2 })
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::Interval { .. } => 1,
            Domain::Rectangle { .. } => 2,
        }
    }

    /// Bounds of axis `i`.
    pub fn axis(&self, i: usize) -> (f64, f64) {
        match (*self, i) {
            (Domain::Interval { a, b }, 0) => (a, b),
            (Domain::Rectangle { a1, b1, .. }, 0) => (a1, b1),
            (Domain::Rectangle { a2, b2, .. }, 1) => (a2, b2),
            _ => panic!("axis {i} out of range for {self}"),
        }
    }

    pub fn axes(&self) -> Vec<(f64, f64)> {
        (0..self.dim()).map(|i| self.axis(i)).collect()
    }

    pub fn measure(&self) -> f64 {
        self.axes().iter().map(|(a, b)| b - a).product()
    }

    pub fn center(&self) -> Vec<f64> {
        self.axes().iter().map(|(a, b)| 0.5 * (a + b)).collect()
    }

    pub fn contains_open(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && self
                .axes()
                .iter()
                .zip(x)
                .all(|(&(a, b), &t)| a < t && t < b)
    }

    /// True when `self` is a subset of `other` and differs from it.
    pub fn strictly_inside(&self, other: &Domain) -> bool {
        self.dim() == other.dim()
            && self != other
            && self
                .axes()
                .iter()
                .zip(other.axes())
                .all(|(&(a, b), (c, d))| c <= a && b <= d)
    }

    /// Points on the boundary: endpoints in 1-D, `per_side` points on each
    /// edge (plus corners) in 2-D.
    pub fn boundary_points(&self, per_side: usize) -> Vec<Vec<f64>> {
        match *self {
            Domain::Interval { a, b } => vec![vec![a], vec![b]],
            Domain::Rectangle { a1, b1, a2, b2 } => {
                let mut pts = Vec::new();
                for k in 0..=per_side {
                    let s = k as f64 / per_side as f64;
                    let x = a1 + s * (b1 - a1);
                    let y = a2 + s * (b2 - a2);
                    pts.push(vec![x, a2]);
                    pts.push(vec![x, b2]);
                    pts.push(vec![a1, y]);
                    pts.push(vec![b1, y]);
                }
                pts
            }
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Interval { a, b } => write!(f, "interval {a} {b}"),
            Domain::Rectangle { a1, b1, a2, b2 } => write!(f, "rectangle {a1} {b1} {a2} {b2}"),
        }
    }
}

/// Parses `interval a b` or `rectangle a1 b1 a2 b2`.
impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut words = s.split_whitespace();
        let kind = words.next().unwrap_or("");
        let nums: Vec<f64> = words
            .map(|w| {
                w.parse::<f64>()
                    .map_err(|_| Error::InvalidDomain(format!("bad number `{w}` in `{s}`")))
            })
            .collect::<Result<_>>()?;
        match (kind, nums.as_slice()) {
            ("interval", [a, b]) => Domain::interval(*a, *b),
            ("rectangle", [a1, b1, a2, b2]) => Domain::rectangle(*a1, *b1, *a2, *b2),
            _ => Err(Error::InvalidDomain(format!(
                "expected `interval a b` or `rectangle a1 b1 a2 b2`, got `{s}`"
            ))),
        }
    }
}

/// A finite set of sample points inside a domain.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<f64>>,
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut r = 0.0;
    let mut scale = inv;
    while i > 0 {
        r += (i % base) as f64 * scale;
        i /= base;
        scale *= inv;
    }
    r
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.len(),
            });
        }
        Ok(PointSet { dim, points })
    }

    /// Cell-centred tensor grid with `per_axis` points along each axis.
    pub fn grid(domain: &Domain, per_axis: usize) -> Self {
        let axes = domain.axes();
        let coord = |(a, b): (f64, f64), k: usize| a + (k as f64 + 0.5) / per_axis as f64 * (b - a);
        let points = match axes.as_slice() {
            [x] => (0..per_axis).map(|k| vec![coord(*x, k)]).collect(),
            [x, y] => (0..per_axis)
                .flat_map(|j| (0..per_axis).map(move |i| vec![coord(*x, i), coord(*y, j)]))
                .collect(),
            _ => unreachable!(),
        };
        PointSet {
            dim: domain.dim(),
            points,
        }
    }

    /// Default admissibility sample: 1000 points in 1-D, 64 x 64 in 2-D.
    pub fn default_for(domain: &Domain) -> Self {
        match domain.dim() {
            1 => PointSet::grid(domain, 1000),
            _ => PointSet::grid(domain, 64),
        }
    }

    /// `n` Halton points (bases 2 and 3) in the domain shrunk by `margin`
    /// (a fraction of each side length) away from the boundary.
    pub fn halton(domain: &Domain, n: usize, margin: f64) -> Self {
        let axes = domain.axes();
        let bases = [2u64, 3u64];
        let points = (1..=n as u64)
            .map(|i| {
                axes.iter()
                    .zip(bases)
                    .map(|(&(a, b), base)| {
                        let t = margin + (1.0 - 2.0 * margin) * radical_inverse(i, base);
                        a + t * (b - a)
                    })
                    .collect()
            })
            .collect();
        PointSet {
            dim: domain.dim(),
            points,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.points.iter().map(Vec::as_slice)
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let d: Domain = "interval 0 1".parse().unwrap();
        assert_eq!(d, Domain::Interval { a: 0.0, b: 1.0 });
        assert_eq!(d.to_string(), "interval 0 1");
        let r: Domain = "rectangle 0 1 -1 2.5".parse().unwrap();
        assert_eq!(r.dim(), 2);
        assert_eq!(r.measure(), 3.5);
        assert!("interval 1 0".parse::<Domain>().is_err());
        assert!("disk 0 1".parse::<Domain>().is_err());
        assert!("interval 0".parse::<Domain>().is_err());
    }

    #[test]
    fn nesting() {
        let a = Domain::interval(0.0, 1.0).unwrap();
        let b = Domain::interval(0.0, 2.0).unwrap();
        assert!(a.strictly_inside(&b));
        assert!(!b.strictly_inside(&a));
        assert!(!a.strictly_inside(&a));
    }

    #[test]
    fn sample_sets_are_interior() {
        let r = Domain::rectangle(0.0, 1.0, 0.0, 2.0).unwrap();
        for set in [
            PointSet::grid(&r, 8),
            PointSet::halton(&r, 200, 0.0),
            PointSet::default_for(&r),
        ] {
            assert!(set.iter().all(|x| r.contains_open(x)));
        }
        assert_eq!(PointSet::default_for(&r).len(), 4096);
        let i = Domain::interval(0.0, 1.0).unwrap();
        assert_eq!(PointSet::default_for(&i).len(), 1000);
        let h = PointSet::halton(&i, 500, 0.01);
        assert!(h.iter().all(|x| (0.01..=0.99).contains(&x[0])));
    }
}
