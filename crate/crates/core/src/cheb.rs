//! Chebyshev polynomials of the first kind T_n and second kind U_n.
//!
//! Both families satisfy the recurrence p_{n+1}(x) = 2x p_n(x) - p_{n-1}(x)
//! with T_0 = U_0 = 1, T_1 = x, U_1 = 2x. Single polynomials are evaluated
//! by the forward recurrence, finite series by the backward (Clenshaw)
//! recurrence, and the one-parameter generating functions
//!
//! ```text
//!   sum_j a^j T_j(x) = (1 - a x) / (1 + a^2 - 2 a x)
//!   sum_j a^j U_j(x) = 1 / (1 + a^2 - 2 a x)
//! ```
//!
//! in closed form, each paired with a truncated-series companion.

use crate::error::{Error, Result};

/// Tolerance on the `|x| <= 1` domain check. Quadrature nodes sit exactly
/// inside (-1, 1) but callers may pass rounded endpoints.
pub const DOMAIN_EPS: f64 = 1e-14;

/// Which of the two Chebyshev families a value or series refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChebKind {
    /// T_n, orthogonal under the arcsine density on (-1, 1).
    First,
    /// U_n, orthogonal under the semicircle density on (-1, 1).
    Second,
}

/// A finite Chebyshev series `sum_j coeffs[j] * P_j(x)` with P = T or U.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    pub kind: ChebKind,
    pub coeffs: Vec<f64>,
}

impl ChebSeries {
    /// Builds a series, rejecting empty or non-finite coefficient vectors.
    pub fn new(kind: ChebKind, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Unsupported("empty Chebyshev series".into()));
        }
        if let Some(&c) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::Domain {
                name: "coefficient",
                value: c,
                domain: "finite reals",
            });
        }
        Ok(Self { kind, coeffs })
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Clenshaw evaluation of the series at `x`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        clenshaw(self, x)
    }
}

pub(crate) fn check_closed(name: &'static str, v: f64) -> Result<()> {
    if !v.is_finite() || v.abs() > 1.0 + DOMAIN_EPS {
        return Err(Error::Domain {
            name,
            value: v,
            domain: "[-1, 1]",
        });
    }
    Ok(())
}

pub(crate) fn check_open(name: &'static str, v: f64) -> Result<()> {
    if !v.is_finite() || v.abs() >= 1.0 {
        return Err(Error::Domain {
            name,
            value: v,
            domain: "(-1, 1)",
        });
    }
    Ok(())
}

pub(crate) fn check_x(x: f64) -> Result<()> {
    check_closed("x", x)
}

pub(crate) fn check_a(a: f64) -> Result<()> {
    check_open("a", a)
}

/// T_n(x) or U_n(x) by the three-term forward recurrence, without the
/// domain check. Extrapolates freely outside [-1, 1]; internal callers
/// use this on arguments they have already validated.
pub fn cheb_eval_unchecked(kind: ChebKind, n: u32, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = match kind {
        ChebKind::First => x,
        ChebKind::Second => 2.0 * x,
    };
    for _ in 1..n {
        (prev, cur) = (cur, 2.0 * x * cur - prev);
    }
    cur
}

/// T_n(x) or U_n(x) for `x` in [-1, 1].
pub fn cheb_eval(kind: ChebKind, n: u32, x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(cheb_eval_unchecked(kind, n, x))
}

/// Evaluates `sum_j c_j P_j(x)` by the backward (Clenshaw) recurrence.
///
/// For both kinds run b_k = c_k + 2x b_{k+1} - b_{k+2} downward; the result
/// is c_0 + x b_1 - b_2 for T-series and b_0 for U-series.
pub fn clenshaw(series: &ChebSeries, x: f64) -> Result<f64> {
    check_x(x)?;
    if series.coeffs.is_empty() {
        return Err(Error::Unsupported("empty Chebyshev series".into()));
    }
    let c = &series.coeffs;
    let n = c.len();
    if n == 1 {
        return Ok(c[0]);
    }
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &ck in c[1..].iter().rev() {
        (b1, b2) = (ck + 2.0 * x * b1 - b2, b1);
    }
    Ok(match series.kind {
        ChebKind::First => c[0] + x * b1 - b2,
        ChebKind::Second => c[0] + 2.0 * x * b1 - b2,
    })
}

/// Closed form of the generating function `sum_j a^j P_j(x)`.
///
/// First kind: (1 - ax)/(1 + a^2 - 2ax), strictly positive for
/// |a|, |x| < 1. Second kind: 1/(1 + a^2 - 2ax). The denominator is
/// bounded below by (1 - |a|)^2 > 0 on the whole domain.
pub fn gen_fn(kind: ChebKind, a: f64, x: f64) -> Result<f64> {
    check_a(a)?;
    check_x(x)?;
    Ok(gen_fn_unchecked(kind, a, x))
}

pub(crate) fn gen_fn_unchecked(kind: ChebKind, a: f64, x: f64) -> f64 {
    let den = 1.0 + a * a - 2.0 * a * x;
    match kind {
        ChebKind::First => (1.0 - a * x) / den,
        ChebKind::Second => 1.0 / den,
    }
}

/// Partial sum `sum_{j=0}^{n} a^j P_j(x)` of the generating function.
pub fn gen_fn_series(kind: ChebKind, a: f64, x: f64, n: u32) -> Result<f64> {
    check_a(a)?;
    check_x(x)?;
    let mut sum = 1.0;
    let mut pow = 1.0;
    let mut prev = 1.0;
    let mut cur = match kind {
        ChebKind::First => x,
        ChebKind::Second => 2.0 * x,
    };
    for _ in 0..n {
        pow *= a;
        sum += pow * cur;
        (prev, cur) = (cur, 2.0 * x * cur - prev);
    }
    Ok(sum)
}

/// Upper bound on |gen_fn - gen_fn_series(n)| valid on the whole domain,
/// from |T_j| <= 1 and |U_j| <= j + 1:
///
/// first kind  sum_{j>n} |a|^j           = |a|^{n+1} / (1 - |a|)
/// second kind sum_{j>n} (j+1) |a|^j     = |a|^{n+1} ((n+2) - (n+1)|a|) / (1 - |a|)^2
pub fn gen_fn_tail_bound(kind: ChebKind, a: f64, n: u32) -> f64 {
    let r = a.abs();
    if r == 0.0 {
        return 0.0;
    }
    let head = r.powi(n as i32 + 1);
    match kind {
        ChebKind::First => head / (1.0 - r),
        ChebKind::Second => {
            let nf = n as f64;
            head * ((nf + 2.0) - (nf + 1.0) * r) / ((1.0 - r) * (1.0 - r))
        }
    }
}
