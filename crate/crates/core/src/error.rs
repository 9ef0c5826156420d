use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument landed outside its mathematical domain.
    #[error("{name} = {value} is outside {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// Two pole parameters are too close for the coefficient formulas,
    /// whose denominators carry (a_k - a_j) factors.
    #[error("pole parameters a[{i}] = {ai} and a[{j}] = {aj} are closer than {min:e}")]
    IllConditioned {
        i: usize,
        j: usize,
        ai: f64,
        aj: f64,
        min: f64,
    },

    /// The operation is not defined for the requested configuration.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// CDF inversion failed to reach the requested tolerance.
    #[error("inversion did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: u32, residual: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
