//! Chebyshev kernel identities and the pole-parametrized probability
//! densities they generate on (-1, 1).
//!
//! The crate has three layers:
//!
//! - polynomial machinery: [`cheb`] (T/U evaluation, Clenshaw series,
//!   generating functions) and [`quadrature`] (Gauss-Chebyshev rules for the
//!   arcsine and semicircle weights);
//! - closed forms: [`kernels`] (eleven rational kernel identities with
//!   certified series oracles) and [`coeffs`] (partial fractions, normalizers,
//!   symmetric functions);
//! - probability: [`densities`] (the product family, conjugate-pair forms,
//!   marginals, CDFs) and [`sampler`] (SplitMix64-driven inverse-CDF
//!   sampling with a KS helper).
//!
//! [`verify`] wires every closed form to an independent oracle and exposes
//! the named check suites used by the CLI and the acceptance tests.
//!
//! Everything is pure and `Send + Sync`; values can be shared freely across
//! threads.

pub mod cheb;
pub mod coeffs;
pub mod densities;
pub mod error;
pub mod kernels;
pub mod quadrature;
pub mod sampler;
pub mod verify;

pub use cheb::{cheb_eval, clenshaw, gen_fn, gen_fn_series, ChebKind, ChebSeries};
pub use coeffs::{
    b_coeffs, gamma_ab, normalizer, normalizer_closed, partial_fractions, sym_funcs, t2_closed,
    t_coeff, ParamVector, PartialFractionDecomposition, PoleTerm, SymmetricFunctions,
};
pub use densities::{
    arcsine_pdf, b4_conj, b4_real_coeffs, density_eval, density_series_eval, f2_conj,
    f2_conj_series, f4_conj, marginal_arcsine, marginal_semicircle, semicircle_pdf,
    B4RealCoeffs, ConjugatePair, ConjugatePairs, Density, DensityForm,
};
pub use error::{Error, Result};
pub use kernels::{
    kernel_closed, kernel_series, kernel_tail_bound, terms_for_tolerance, w_denom, KernelId,
    KernelPoint,
};
pub use quadrature::{theta_trapezoid, QuadRule, DEFAULT_ORACLE_NODES};
pub use sampler::{
    invert_cdf, ks_critical_01, ks_statistic, sample, SampleConfig, SplitMix64,
};
pub use verify::{CheckResult, VerifyOptions, SUITES};
