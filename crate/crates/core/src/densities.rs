//! The pole-parametrized density family on (-1, 1) and its conjugate-pair
//! specializations.
//!
//! The base weight is the arcsine density f_C(x) = 1/(pi sqrt(1 - x^2)).
//! Attaching n generating-function factors gives
//!
//! ```text
//!   f(x | a_1..a_n) = B_n f_C(x) prod_i (1 - a_i x)/(1 + a_i^2 - 2 a_i x)
//! ```
//!
//! with the normalizer B_n from [`crate::coeffs`], and the cosine expansion
//!
//! ```text
//!   f(x) = f_C(x) (1 + (B_n / 2^{n-1}) sum_{j>=1} t_j T_j(x)).
//! ```
//!
//! Replacing a pair of poles by a complex-conjugate pair rho e^{+-i theta}
//! (encoded by the real numbers rho and y = cos theta) merges two factors
//! into the real quadratic (1 - 2 rho x y + rho^2 x^2) / w(x, y | rho); the
//! two- and four-pole conjugate families f_2 and f_4 are provided in closed
//! form. [`Density`] packages any of these with its cosine coefficients so
//! CDF evaluation and inverse-CDF sampling work uniformly.

use crate::cheb::{check_closed, check_open, gen_fn_unchecked, ChebKind};
use crate::coeffs::{b_coeffs, normalizer, t_coeffs_upto, ParamVector};
use crate::error::{Error, Result};
use crate::kernels::{check_rho, w_raw};
use std::f64::consts::PI;

/// Truncation target for the cached cosine coefficients of a [`Density`]:
/// the sum of all dropped |c_j| stays below this.
const SERIES_TAIL_EPS: f64 = 1e-13;

pub(crate) fn arcsine_pdf_unchecked(x: f64) -> f64 {
    1.0 / (PI * (1.0 - x * x).sqrt())
}

/// The arcsine density f_C(x) = 1/(pi sqrt(1 - x^2)) on (-1, 1).
pub fn arcsine_pdf(x: f64) -> Result<f64> {
    check_open("x", x)?;
    Ok(arcsine_pdf_unchecked(x))
}

/// The semicircle density f_W(x) = (2/pi) sqrt(1 - x^2) on (-1, 1).
pub fn semicircle_pdf(x: f64) -> Result<f64> {
    check_closed("x", x)?;
    Ok(2.0 / PI * (1.0 - x * x).sqrt())
}

/// Closed-form product density `B_n f_C(x) prod_i phi_T(x | a_i)`.
///
/// Strictly positive on (-1, 1) and integrates to 1. Recomputes the
/// normalizer on every call; use [`Density::product`] to cache it.
pub fn density_eval(params: &ParamVector, x: f64) -> Result<f64> {
    check_open("x", x)?;
    let b = normalizer(params)?;
    Ok(b * arcsine_pdf_unchecked(x) * phi_product(params.values(), x))
}

pub(crate) fn phi_product(a: &[f64], x: f64) -> f64 {
    a.iter()
        .map(|&ai| gen_fn_unchecked(ChebKind::First, ai, x))
        .product()
}

/// Truncated cosine expansion of the product density:
/// `f_C(x) (1 + (B_n / 2^{n-1}) sum_{j=1}^{n_terms} t_j T_j(x))`.
pub fn density_series_eval(params: &ParamVector, x: f64, n_terms: u32) -> Result<f64> {
    check_open("x", x)?;
    let b = normalizer(params)?;
    let t = t_coeffs_upto(n_terms, params)?;
    let scale = b / 2f64.powi(params.len() as i32 - 1);
    let mut sum = 1.0;
    let mut prev = 1.0;
    let mut cur = x;
    for &tj in &t[1..] {
        sum += scale * tj * cur;
        (prev, cur) = (cur, 2.0 * x * cur - prev);
    }
    Ok(arcsine_pdf_unchecked(x) * sum)
}

/// Two poles merged into one conjugate pair (rho, y):
///
/// ```text
///   f_2(x | rho, y) = f_C(x) (2 (1 - rho^2)/(2 - rho^2))
///                     (1 - 2 x y rho + rho^2 x^2) / w(x, y | rho)
/// ```
///
/// This stays finite for y = +-1 (where the two poles coincide on the real
/// axis), so the closed form is usable on the whole parameter range.
pub fn f2_conj(rho: f64, y: f64, x: f64) -> Result<f64> {
    check_rho(rho)?;
    check_closed("y", y)?;
    check_open("x", x)?;
    Ok(f2_conj_unchecked(rho, y, x))
}

pub(crate) fn f2_conj_unchecked(rho: f64, y: f64, x: f64) -> f64 {
    let r2 = rho * rho;
    arcsine_pdf_unchecked(x) * (2.0 * (1.0 - r2) / (2.0 - r2))
        * (1.0 - 2.0 * x * y * rho + r2 * x * x)
        / w_raw(x, y, rho)
}

/// Truncated cosine expansion of f_2:
///
/// ```text
///   f_C(x) [ 1 + sum_{j=1}^{n} rho^j T_j(x)
///                 ((1 - rho^2) U_j(y) + 2 T_j(y)) / (2 - rho^2) ]
/// ```
pub fn f2_conj_series(rho: f64, y: f64, x: f64, n_terms: u32) -> Result<f64> {
    check_rho(rho)?;
    check_closed("y", y)?;
    check_open("x", x)?;
    let r2 = rho * rho;
    let mut sum = 1.0;
    let (mut tx_prev, mut tx_cur) = (1.0, x);
    let (mut ty_prev, mut ty_cur) = (1.0, y);
    let (mut uy_prev, mut uy_cur) = (1.0, 2.0 * y);
    let mut pow = 1.0;
    for _ in 1..=n_terms {
        pow *= rho;
        sum += pow * tx_cur * ((1.0 - r2) * uy_cur + 2.0 * ty_cur) / (2.0 - r2);
        (tx_prev, tx_cur) = (tx_cur, 2.0 * x * tx_cur - tx_prev);
        (ty_prev, ty_cur) = (ty_cur, 2.0 * y * ty_cur - ty_prev);
        (uy_prev, uy_cur) = (uy_cur, 2.0 * y * uy_cur - uy_prev);
    }
    Ok(arcsine_pdf_unchecked(x) * sum)
}

/// The rho-only ingredients of the four-pole conjugate normalizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct B4RealCoeffs {
    /// (1 - r1^2 r2^2)(4 + (4 - r1^2 r2^2)(1 - r1^2)(1 - r2^2))
    pub alpha: f64,
    /// r1^2 r2^2 (1 - r2^2)(2 - r1^2)
    pub beta1: f64,
    /// r1^2 r2^2 (1 - r1^2)(2 - r2^2)
    pub beta2: f64,
    /// r1 r2 ((2 + r1^2 r2^2)(1 - r1^2)(1 - r2^2) + 2 (1 - r1^2 r2^2))
    pub gamma4: f64,
}

/// The coefficients entering the denominator of [`b4_conj`]:
/// `alpha + 4 (beta1 y1^2 + beta2 y2^2) - 4 gamma4 y1 y2`.
pub fn b4_real_coeffs(rho1: f64, rho2: f64) -> B4RealCoeffs {
    let (r1, r2) = (rho1 * rho1, rho2 * rho2);
    let s4 = r1 * r2;
    B4RealCoeffs {
        alpha: (1.0 - s4) * (4.0 + (4.0 - s4) * (1.0 - r1) * (1.0 - r2)),
        beta1: s4 * (1.0 - r2) * (2.0 - r1),
        beta2: s4 * (1.0 - r1) * (2.0 - r2),
        gamma4: rho1 * rho2 * ((2.0 + s4) * (1.0 - r1) * (1.0 - r2) + 2.0 * (1.0 - s4)),
    }
}

/// Normalizer of the four-pole conjugate density:
///
/// ```text
///   B_4 = 8 (1 - rho1^2)(1 - rho2^2) w(y1, y2 | rho1 rho2)
///         / (alpha + 4 (beta1 y1^2 + beta2 y2^2) - 4 gamma4 y1 y2)
/// ```
///
/// Equivalent to the symmetric-function closed form of
/// [`crate::coeffs::normalizer_closed`] evaluated at S_1 = 2(rho1 y1 + rho2 y2),
/// S_2 = rho1^2 + rho2^2 + 4 rho1 rho2 y1 y2, S_3 = 2 rho1 rho2 (rho1 y2 + rho2 y1),
/// S_4 = rho1^2 rho2^2, P_4 = (1 - rho1^2)(1 - rho2^2) w(y1, y2 | rho1 rho2).
/// Remains finite when pair parameters collide (the pole-coefficient route
/// is never taken for conjugate forms).
pub fn b4_conj(rho1: f64, y1: f64, rho2: f64, y2: f64) -> Result<f64> {
    check_rho(rho1)?;
    check_rho(rho2)?;
    check_closed("y1", y1)?;
    check_closed("y2", y2)?;
    Ok(b4_conj_unchecked(rho1, y1, rho2, y2))
}

pub(crate) fn b4_conj_unchecked(rho1: f64, y1: f64, rho2: f64, y2: f64) -> f64 {
    let c = b4_real_coeffs(rho1, rho2);
    let den = c.alpha + 4.0 * (c.beta1 * y1 * y1 + c.beta2 * y2 * y2) - 4.0 * c.gamma4 * y1 * y2;
    8.0 * (1.0 - rho1 * rho1) * (1.0 - rho2 * rho2) * w_raw(y1, y2, rho1 * rho2) / den
}

/// The four-pole conjugate density:
///
/// ```text
///   f_4(x) = B_4 f_C(x) prod_{i=1,2} (1 - 2 rho_i x y_i + rho_i^2 x^2) / w(x, y_i | rho_i)
/// ```
pub fn f4_conj(rho1: f64, y1: f64, rho2: f64, y2: f64, x: f64) -> Result<f64> {
    check_open("x", x)?;
    let b4 = b4_conj(rho1, y1, rho2, y2)?;
    Ok(b4 * arcsine_pdf_unchecked(x) * pair_factor(rho1, y1, x) * pair_factor(rho2, y2, x))
}

pub(crate) fn pair_factor(rho: f64, y: f64, x: f64) -> f64 {
    (1.0 - 2.0 * rho * x * y + rho * rho * x * x) / w_raw(x, y, rho)
}

/// Marginal of f_2 against the arcsine weight in y:
///
/// ```text
///   int f_2(x | rho, y) f_C(y) dy
///     = f_C(x) 2 (1 + rho^2 - x^2 rho^2 (3 - rho^2))
///       / ((2 - rho^2)((1 + rho^2)^2 - 4 rho^2 x^2))
/// ```
pub fn marginal_arcsine(rho: f64, x: f64) -> Result<f64> {
    check_rho(rho)?;
    check_open("x", x)?;
    let r2 = rho * rho;
    Ok(arcsine_pdf_unchecked(x) * 2.0 * (1.0 + r2 - x * x * r2 * (3.0 - r2))
        / ((2.0 - r2) * ((1.0 + r2).powi(2) - 4.0 * r2 * x * x)))
}

/// Marginal of f_2 against the semicircle weight in y:
///
/// ```text
///   int f_2(x | rho, y) f_W(y) dy = f_C(x) 2 (1 - rho^2 x^2) / (2 - rho^2)
/// ```
///
/// Only two moments of the semicircle weight survive in the cosine expansion
/// of f_2: (2/pi) int T_j(y) sqrt(1-y^2) dy is 1 for j = 0, -1/2 for j = 2
/// and 0 otherwise, which leaves 1 - rho^2 T_2(x)/(2 - rho^2) and simplifies
/// to the quadratic above. It is even in x, strictly positive, tends to f_C
/// as rho -> 0 and to f_W as |rho| -> 1, and integrates to 1 because the
/// arcsine second moment is 1/2.
pub fn marginal_semicircle(rho: f64, x: f64) -> Result<f64> {
    check_rho(rho)?;
    check_open("x", x)?;
    let r2 = rho * rho;
    Ok(arcsine_pdf_unchecked(x) * 2.0 * (1.0 - r2 * x * x) / (2.0 - r2))
}

/// One conjugate pole pair rho e^{+-i theta}, stored as (rho, y = cos theta).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugatePair {
    pub rho: f64,
    pub y: f64,
}

/// One or two conjugate pole pairs (the supported four- and two-pole cases).
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugatePairs {
    pairs: Vec<ConjugatePair>,
}

impl ConjugatePairs {
    pub fn new(pairs: Vec<ConjugatePair>) -> Result<Self> {
        if pairs.is_empty() || pairs.len() > 2 {
            return Err(Error::Unsupported(format!(
                "{} conjugate pairs; supported counts are 1 and 2",
                pairs.len()
            )));
        }
        for p in &pairs {
            check_rho(p.rho)?;
            check_closed("y", p.y)?;
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[ConjugatePair] {
        &self.pairs
    }
}

/// Which member of the density family a [`Density`] represents.
#[derive(Debug, Clone, PartialEq)]
pub enum DensityForm {
    /// Real poles a_1..a_n.
    Product(ParamVector),
    /// One conjugate pair.
    ConjPair { rho: f64, y: f64 },
    /// Two conjugate pairs.
    ConjPairs4 { rho1: f64, y1: f64, rho2: f64, y2: f64 },
}

/// A density from the family with its cosine coefficients cached, so the
/// PDF (closed form), CDF (cosine antiderivative) and theta-space views are
/// all available. Immutable and freely shareable across threads.
#[derive(Debug, Clone)]
pub struct Density {
    form: DensityForm,
    norm: f64,
    /// c_1..c_N of f(x) = f_C(x) (1 + sum c_j T_j(x)); dropped-tail mass
    /// (sum of |c_j| beyond N) is below `tail`.
    cos_coeffs: Vec<f64>,
    tail: f64,
}

fn geo_tail(r: f64, m: f64) -> f64 {
    r.powf(m) / (1.0 - r)
}

fn lin_tail(r: f64, m: f64) -> f64 {
    r.powf(m) * ((m + 1.0) - m * r) / (1.0 - r).powi(2)
}

/// Coefficients e_0..e_J of one conjugate-pair factor
/// (1 - 2 rho x y + rho^2 x^2)/w(x, y | rho) = sum_j e_j T_j(x),
/// truncated so the dropped |e_j| sum is below `eps`. Returns the
/// coefficients and the tail bound actually achieved.
fn pair_cos_coeffs(rho: f64, y: f64, eps: f64) -> (Vec<f64>, f64) {
    let r2 = rho * rho;
    let scale = 1.0 / (2.0 * (1.0 - r2));
    let r = rho.abs();
    if r == 0.0 {
        return (vec![(2.0 - r2) * scale], 0.0);
    }
    // |e_j| <= ((1 - r^2)(j + 1) + 2) r^j / (2 (1 - r^2)); find J with tail < eps
    let mut jmax = 8usize;
    let tail_at = |j: usize| {
        let m = j as f64 + 1.0;
        ((1.0 - r2) * lin_tail(r, m) + 2.0 * geo_tail(r, m)) * scale
    };
    while tail_at(jmax) > eps && jmax < 4_000_000 {
        jmax *= 2;
    }
    let mut coeffs = Vec::with_capacity(jmax + 1);
    coeffs.push((2.0 - r2) * scale);
    let (mut ty_prev, mut ty_cur) = (1.0, y);
    let (mut uy_prev, mut uy_cur) = (1.0, 2.0 * y);
    let mut pow = 1.0;
    for _ in 1..=jmax {
        pow *= rho;
        coeffs.push(pow * ((1.0 - r2) * uy_cur + 2.0 * ty_cur) * scale);
        (ty_prev, ty_cur) = (ty_cur, 2.0 * y * ty_cur - ty_prev);
        (uy_prev, uy_cur) = (uy_cur, 2.0 * y * uy_cur - uy_prev);
    }
    (coeffs, tail_at(jmax))
}

/// Chebyshev linearization of a product of two T-series using
/// T_a T_b = (T_{a+b} + T_{|a-b|}) / 2.
fn cheb_product(e: &[f64], f: &[f64]) -> Vec<f64> {
    let mut h = vec![0.0; e.len() + f.len() - 1];
    for (a, &ea) in e.iter().enumerate() {
        for (b, &fb) in f.iter().enumerate() {
            let half = 0.5 * ea * fb;
            h[a + b] += half;
            h[a.abs_diff(b)] += half;
        }
    }
    h
}

impl Density {
    /// The product density with real poles.
    pub fn product(params: ParamVector) -> Result<Self> {
        let norm = normalizer(&params)?;
        let b = b_coeffs(&params)?;
        let scale = norm / 2f64.powi(params.len() as i32 - 1);
        let b_abs: f64 = b.iter().map(|v| v.abs()).sum();
        let r = params
            .values()
            .iter()
            .fold(0.0f64, |m, &a| m.max(a.abs()));
        let (n_terms, tail) = if r == 0.0 || b_abs == 0.0 {
            (0u32, 0.0)
        } else {
            // |c_j| <= scale * b_abs * r^j
            let mut n = 8u32;
            while scale.abs() * b_abs * geo_tail(r, n as f64 + 1.0) > SERIES_TAIL_EPS {
                n *= 2;
                if n > 4_000_000 {
                    break;
                }
            }
            (n, scale.abs() * b_abs * geo_tail(r, n as f64 + 1.0))
        };
        let t = t_coeffs_upto(n_terms, &params)?;
        let cos_coeffs = t[1..].iter().map(|tj| scale * tj).collect();
        Ok(Density {
            form: DensityForm::Product(params),
            norm,
            cos_coeffs,
            tail,
        })
    }

    /// The two-pole conjugate density f_2(. | rho, y).
    pub fn conj_pair(rho: f64, y: f64) -> Result<Self> {
        check_rho(rho)?;
        check_closed("y", y)?;
        let r2 = rho * rho;
        let norm = 2.0 * (1.0 - r2) / (2.0 - r2);
        let (pair, tail) = pair_cos_coeffs(rho, y, SERIES_TAIL_EPS / 2.0);
        // f_2 / f_C = B_2 * pair factor, and B_2 e_0 = 1 exactly
        let cos_coeffs = pair[1..].iter().map(|e| norm * e).collect();
        Ok(Density {
            form: DensityForm::ConjPair { rho, y },
            norm,
            cos_coeffs,
            tail: tail * norm,
        })
    }

    /// The four-pole conjugate density f_4(. | rho1, y1, rho2, y2).
    pub fn conj_pairs(rho1: f64, y1: f64, rho2: f64, y2: f64) -> Result<Self> {
        let norm = b4_conj(rho1, y1, rho2, y2)?;
        let (e1, tail1) = pair_cos_coeffs(rho1, y1, SERIES_TAIL_EPS / 8.0);
        let (e2, tail2) = pair_cos_coeffs(rho2, y2, SERIES_TAIL_EPS / 8.0);
        let sum1: f64 = e1.iter().map(|v| v.abs()).sum();
        let sum2: f64 = e2.iter().map(|v| v.abs()).sum();
        let mut h = cheb_product(&e1, &e2);
        // the product truncation error, in dropped-coefficient mass
        let tail = norm * (tail1 * sum2 + tail2 * sum1 + tail1 * tail2);
        // B_4 h_0 = 1 up to the truncation error; renormalize so the cosine
        // form stays an exact probability density
        let c0 = norm * h[0];
        debug_assert!((c0 - 1.0).abs() < 1e-10);
        let cos_coeffs = h.drain(1..).map(|v| norm * v / c0).collect();
        Ok(Density {
            form: DensityForm::ConjPairs4 { rho1, y1, rho2, y2 },
            norm,
            cos_coeffs,
            tail,
        })
    }

    /// Dispatches on the number of conjugate pairs (1 or 2).
    pub fn from_conjugate(pairs: &ConjugatePairs) -> Result<Self> {
        match pairs.pairs() {
            [p] => Density::conj_pair(p.rho, p.y),
            [p, q] => Density::conj_pairs(p.rho, p.y, q.rho, q.y),
            _ => unreachable!("ConjugatePairs is validated at construction"),
        }
    }

    pub fn form(&self) -> &DensityForm {
        &self.form
    }

    /// The normalizing constant of the closed-form product.
    pub fn normalizer(&self) -> f64 {
        self.norm
    }

    /// Cosine coefficients c_1..c_N of f / f_C - 1.
    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos_coeffs
    }

    /// Bound on the dropped coefficient mass beyond the cached c_j.
    pub fn series_tail(&self) -> f64 {
        self.tail
    }

    /// Closed-form PDF at x in (-1, 1).
    pub fn pdf(&self, x: f64) -> Result<f64> {
        match &self.form {
            DensityForm::Product(params) => {
                check_open("x", x)?;
                Ok(self.norm * arcsine_pdf_unchecked(x) * phi_product(params.values(), x))
            }
            DensityForm::ConjPair { rho, y } => f2_conj(*rho, *y, x),
            DensityForm::ConjPairs4 { rho1, y1, rho2, y2 } => {
                check_open("x", x)?;
                Ok(self.norm
                    * arcsine_pdf_unchecked(x)
                    * pair_factor(*rho1, *y1, x)
                    * pair_factor(*rho2, *y2, x))
            }
        }
    }

    /// CDF at x in [-1, 1], from the antiderivative of the cosine form:
    /// with theta = arccos x,
    ///
    /// ```text
    ///   F(x) = 1 - theta/pi - (1/pi) sum_j c_j sin(j theta) / j
    /// ```
    pub fn cdf(&self, x: f64) -> Result<f64> {
        check_closed("x", x)?;
        Ok(self.cdf_from_theta(x.clamp(-1.0, 1.0).acos()))
    }

    /// CDF as a function of theta = arccos x in [0, pi].
    pub fn cdf_from_theta(&self, theta: f64) -> f64 {
        let (sin_t, cos_t) = theta.sin_cos();
        let mut sum = 0.0;
        let mut s_prev = 0.0;
        let mut s_cur = sin_t;
        for (j, &c) in self.cos_coeffs.iter().enumerate() {
            sum += c * s_cur / (j + 1) as f64;
            (s_prev, s_cur) = (s_cur, 2.0 * cos_t * s_cur - s_prev);
        }
        (1.0 - theta / PI - sum / PI).clamp(0.0, 1.0)
    }

    /// Density of Theta = arccos X, i.e. (1 + sum_j c_j cos(j theta)) / pi.
    /// This is -d/d theta of [`Self::cdf_from_theta`].
    pub fn theta_pdf(&self, theta: f64) -> f64 {
        let cos_t = theta.cos();
        let mut sum = 1.0;
        let mut c_prev = 1.0;
        let mut c_cur = cos_t;
        for &c in &self.cos_coeffs {
            sum += c * c_cur;
            (c_prev, c_cur) = (c_cur, 2.0 * cos_t * c_cur - c_prev);
        }
        sum / PI
    }
}
