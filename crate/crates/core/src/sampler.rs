//! Inverse-CDF sampling for the density family.
//!
//! Uniform variates come from a SplitMix64 generator so sample streams are
//! reproducible across implementations from the seed alone. Each draw solves
//! F(x) = u in theta = arccos(x) coordinates, where the base measure is
//! uniform and the endpoint singularities of the weight disappear: bisection
//! keeps a hard bracket and Newton steps (using the theta-space density)
//! finish it off.
//!
//! The generator state is local to each `sample` call, so calls are
//! reentrant; parallel sampling should use independent seeds.

use crate::densities::Density;
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// How many samples, from which seed, to what inversion tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleConfig {
    count: usize,
    seed: u64,
    inversion_tolerance: f64,
}

/// Default |F(x) - u| tolerance of the theta-space inversion.
pub const DEFAULT_INVERSION_TOL: f64 = 1e-12;

const MAX_ITERATIONS: u32 = 200;

impl SampleConfig {
    pub fn new(count: usize, seed: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::Unsupported("sample count must be at least 1".into()));
        }
        Ok(Self {
            count,
            seed,
            inversion_tolerance: DEFAULT_INVERSION_TOL,
        })
    }

    /// Overrides the inversion tolerance; accepted range (0, 1e-6].
    pub fn with_tolerance(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol <= 1e-6) {
            return Err(Error::Domain {
                name: "inversion_tolerance",
                value: tol,
                domain: "(0, 1e-6]",
            });
        }
        self.inversion_tolerance = tol;
        Ok(self)
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn inversion_tolerance(&self) -> f64 {
        self.inversion_tolerance
    }
}

/// SplitMix64: state advances by the golden-ratio increment and the output
/// is a three-round xor-shift-multiply mix of the state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform double strictly inside (0, 1): 53 random bits offset by half
    /// a step, so neither endpoint is reachable.
    pub fn next_f64(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Solves F(x) = u for the given density; the returned x lies strictly
/// inside (-1, 1).
///
/// The residual |F - u| <= tol is enforced at the theta-space solution
/// before mapping back through x = cos(theta). For u within about 1e-6 of
/// 0 or 1 the f64 spacing of x near the endpoints quantizes F more coarsely
/// than tight tolerances, so re-evaluating F at the returned x can show a
/// larger residual there.
pub fn invert_cdf(density: &Density, u: f64, tol: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::Domain {
            name: "u",
            value: u,
            domain: "(0, 1)",
        });
    }
    // G(theta) = F(cos theta) decreases from 1 at theta = 0 to 0 at theta = pi.
    let mut lo = 0.0f64;
    let mut hi = PI;
    let mut theta = PI * (1.0 - u); // exact for the arcsine base case
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let g = density.cdf_from_theta(theta);
        residual = g - u;
        if residual.abs() <= tol {
            let x = theta.cos().clamp(-1.0 + f64::EPSILON, 1.0 - f64::EPSILON);
            return Ok(x);
        }
        if residual > 0.0 {
            lo = theta;
        } else {
            hi = theta;
        }
        let slope = density.theta_pdf(theta);
        let newton = theta + residual / slope.max(1e-300);
        theta = if slope > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(Error::NonConvergence {
        iterations: MAX_ITERATIONS,
        residual: residual.abs(),
    })
}

/// Draws `cfg.count` variates; deterministic for a fixed seed.
pub fn sample(density: &Density, cfg: &SampleConfig) -> Result<Vec<f64>> {
    let mut rng = SplitMix64::new(cfg.seed());
    (0..cfg.count())
        .map(|_| invert_cdf(density, rng.next_f64(), cfg.inversion_tolerance()))
        .collect()
}

/// Two-sided Kolmogorov-Smirnov statistic of a sorted sample against a CDF:
/// sup over the sample of max(i/n - F(x_i), F(x_i) - (i-1)/n).
pub fn ks_statistic(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            let upper = (i + 1) as f64 / n - f;
            let lower = f - i as f64 / n;
            upper.max(lower)
        })
        .fold(0.0, f64::max)
}

/// Critical KS value at significance 0.01 for sample size n (asymptotic
/// 1.63 / sqrt(n)).
pub fn ks_critical_01(n: usize) -> f64 {
    1.63 / (n as f64).sqrt()
}
