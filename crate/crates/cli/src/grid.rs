use crate::CliError;

/// An inclusive evaluation grid `lo:hi:count`.
#[derive(Debug, Clone, Copy)]
pub struct Grid {
    lo: f64,
    hi: f64,
    count: usize,
}

/// Density grids are clipped this far inside (-1, 1) because the arcsine
/// weight is singular at the endpoints.
const CLIP: f64 = 1.0 - 1e-12;

impl Grid {
    pub fn parse(s: &str) -> Result<Grid, CliError> {
        let usage = || {
            CliError::Usage(format!(
                "grid '{s}' is not of the form lo:hi:count (e.g. -0.9:0.9:181)"
            ))
        };
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, count] = parts.as_slice() else {
            return Err(usage());
        };
        let lo: f64 = lo.parse().map_err(|_| usage())?;
        let hi: f64 = hi.parse().map_err(|_| usage())?;
        let count: usize = count.parse().map_err(|_| usage())?;
        if count == 0 || !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(usage());
        }
        Ok(Grid { lo, hi, count })
    }

    /// The grid points, endpoints included.
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        (0..self.count)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (self.count - 1) as f64)
            .collect()
    }

    /// Grid points clamped into the open interval for density evaluation.
    pub fn clipped_points(&self) -> Vec<f64> {
        self.points()
            .into_iter()
            .map(|x| x.clamp(-CLIP, CLIP))
            .collect()
    }
}
