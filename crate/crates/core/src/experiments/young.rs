use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{status, Report, SCHEMA_VERSION};
use crate::error::Result;
use crate::fields::ExponentPair;
use crate::picone::young_gap;

/// Bound on `gap / max(a^p, 1)` on the equality samples.
pub const EQUALITY_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct YoungSetup {
    /// Random `(a, b, p)` with `a, b` in `[0, 10)` and `p` in `[1.05, 8)`.
    pub random: usize,
    /// Constructed cases `b = a^(p-1)`, i.e. `a^p = b^q`, with `a` in `[0.01, 5)`.
    pub equality: usize,
    pub seed: u64,
}

impl Default for YoungSetup {
    fn default() -> Self {
        YoungSetup {
            random: 10_000,
            equality: 1_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct YoungSample {
    pub equality: bool,
    pub a: f64,
    pub b: f64,
    pub p: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YoungReport {
    pub schema: u32,
    pub config: YoungSetup,
    pub min_random_gap: f64,
    pub negative_random: usize,
    /// `max gap / max(a^p, 1)` over the equality samples.
    pub max_equality_gap: f64,
    pub equality_tolerance: f64,
    pub passed: bool,
    #[serde(skip)]
    pub samples: Vec<YoungSample>,
}

impl Report for YoungReport {
    fn name(&self) -> &str {
        "young"
    }

    fn passed(&self) -> bool {
        self.passed
    }

    fn summary(&self) -> String {
        format!(
            "{} young: min gap {:.3e} over {} random samples ({} negative), max equality gap {:.3e} (tol {:.0e})",
            status(self.passed),
            self.min_random_gap,
            self.config.random,
            self.negative_random,
            self.max_equality_gap,
            self.equality_tolerance
        )
    }

    fn data_csv(&self) -> String {
        let mut out = String::from("equality,a,b,p,gap\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                s.equality, s.a, s.b, s.p, s.gap
            ));
        }
        out
    }
}

pub fn run_young(setup: &YoungSetup) -> Result<YoungReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(setup.seed);
    let mut samples = Vec::with_capacity(setup.random + setup.equality);
    for _ in 0..setup.random {
        let a = rng.gen_range(0.0..10.0);
        let b = rng.gen_range(0.0..10.0);
        let p = rng.gen_range(1.05..8.0);
        let gap = young_gap(a, b, ExponentPair::new(p)?)?;
        samples.push(YoungSample {
            equality: false,
            a,
            b,
            p,
            gap,
        });
    }
    let mut max_equality_gap = 0.0f64;
    for _ in 0..setup.equality {
        let a: f64 = rng.gen_range(0.01..5.0);
        let p: f64 = rng.gen_range(1.05..8.0);
        let b = a.powf(p - 1.0);
        let gap = young_gap(a, b, ExponentPair::new(p)?)?;
        max_equality_gap = max_equality_gap.max(gap.abs() / a.powf(p).max(1.0));
        samples.push(YoungSample {
            equality: true,
            a,
            b,
            p,
            gap,
        });
    }
    let random = &samples[..setup.random];
    let min_random_gap = random.iter().fold(f64::INFINITY, |m, s| m.min(s.gap));
    let negative_random = random.iter().filter(|s| s.gap < 0.0).count();
    Ok(YoungReport {
        schema: SCHEMA_VERSION,
        config: *setup,
        min_random_gap,
        negative_random,
        max_equality_gap,
        equality_tolerance: EQUALITY_TOL,
        passed: negative_random == 0 && max_equality_gap <= EQUALITY_TOL,
        samples,
    })
}
