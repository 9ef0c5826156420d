//! Closed-form bivariate and diagonal Chebyshev kernels.
//!
//! Every kernel is a series `sum_j rho^j (products of T/U at x, y)` together
//! with its rational closed form over the common denominator
//!
//! ```text
//!   w(x, y | rho) = (1 - rho^2)^2 - 4 x y rho (1 + rho^2) + 4 rho^2 (x^2 + y^2)
//! ```
//!
//! which factors as (1 + rho^2 - 2 rho cos(th-ph)) (1 + rho^2 - 2 rho cos(th+ph))
//! for x = cos(th), y = cos(ph) and so stays >= (1 - |rho|)^4 on the domain.
//! Each closed form is paired with a truncated-series evaluator and a rigorous
//! tail bound derived from |T_j| <= 1, |U_j| <= j + 1, so the identity can be
//! certified numerically at any point.

use crate::cheb::{check_x, ChebKind};
use crate::error::{Error, Result};

/// Largest |rho| accepted by the public kernel API. The identities hold for
/// all |rho| < 1, but tail bounds blow up as |rho| -> 1.
pub const RHO_MAX: f64 = 0.99;

/// The eleven kernel identities.
///
/// Bivariate kernels (arguments x, y, rho):
///
/// ```text
///   GU       sum rho^j U_j(x) U_j(y)      = (1 - rho^2) / w
///   GT       sum rho^j T_j(x) T_j(y)      = (1 - rho^2 - xy rho (3 + rho^2) + 2 rho^2 (x^2 + y^2)) / w,   >= 0
///   GUT      sum rho^j U_j(x) T_j(y)      = ((1 - rho^2) - 2 rho xy + 2 rho^2 y^2) / w
///   UShift1  sum rho^j U_{j+1}(x) U_j(y)  = 2 (x - rho y) / w
///   TShift1  sum rho^j T_j(x) T_{j+1}(y)  = (y - rho x)(1 + rho^2 - 2 rho xy) / w
///   SymA     x sum rho^j U_{j+1}(x) U_j(y) + y sum rho^j U_{j+1}(y) U_j(x)
///                                         = 2 (x^2 + y^2 - 2 rho xy) / w,   >= 0
/// ```
///
/// Diagonal kernels (arguments x, rho):
///
/// ```text
///   UShift2Diag  sum rho^j U_j(x) U_{j+2}(x) = (4x^2 - 1 - rho) / ((1 - rho)((1 + rho)^2 - 4 rho x^2))
///   EvenT        sum rho^{2j} T_{2j}(x)      = (1 + rho^2 - 2 x^2 rho^2) / ((1 + rho^2 - 2 x rho)(1 + rho^2 + 2 x rho)),   >= 0
///   OddT         sum rho^{2j+1} T_{2j+1}(x)  = x rho (1 - rho^2) / ((1 + rho^2 - 2 x rho)(1 + rho^2 + 2 x rho))
///   TUDiag       sum rho^j U_j(x) T_j(x)     = (1 + rho - 2 rho x^2) / ((1 - rho)((1 + rho)^2 - 4 rho x^2)),   >= 0
///   T4           sum rho^{4j} T_{4j}(x)      = (1 - rho^4 + 8 rho^4 x^2 (1 - x^2))
///                                              / (((1 + rho^2)^2 - 4 rho^2 x^2)((1 - rho^2)^2 + 4 rho^2 x^2)),   >= 0
/// ```
///
/// `UShift2Diag` changes sign on the domain (it is -1/(1 - rho^2) at x = 0),
/// so it carries no nonnegativity claim. The TShift1 cross-check against its
/// functional equation uses the symmetric extension T_{-1}(y) = T_1(y) = y
/// for the constant term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelId {
    GU,
    GT,
    GUT,
    UShift1,
    TShift1,
    UShift2Diag,
    SymA,
    EvenT,
    OddT,
    TUDiag,
    T4,
}

impl KernelId {
    pub const ALL: [KernelId; 11] = [
        KernelId::GU,
        KernelId::GT,
        KernelId::GUT,
        KernelId::UShift1,
        KernelId::TShift1,
        KernelId::UShift2Diag,
        KernelId::SymA,
        KernelId::EvenT,
        KernelId::OddT,
        KernelId::TUDiag,
        KernelId::T4,
    ];

    /// Diagonal kernels read only (x, rho).
    pub fn is_diagonal(self) -> bool {
        matches!(
            self,
            KernelId::UShift2Diag | KernelId::EvenT | KernelId::OddT | KernelId::TUDiag | KernelId::T4
        )
    }

    /// Kernels that are nonnegative on the whole domain.
    pub fn is_nonnegative(self) -> bool {
        matches!(
            self,
            KernelId::GT | KernelId::SymA | KernelId::EvenT | KernelId::TUDiag | KernelId::T4
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            KernelId::GU => "gu",
            KernelId::GT => "gt",
            KernelId::GUT => "gut",
            KernelId::UShift1 => "ushift1",
            KernelId::TShift1 => "tshift1",
            KernelId::UShift2Diag => "ushift2diag",
            KernelId::SymA => "syma",
            KernelId::EvenT => "event",
            KernelId::OddT => "oddt",
            KernelId::TUDiag => "tudiag",
            KernelId::T4 => "t4",
        }
    }

    pub fn parse(s: &str) -> Option<KernelId> {
        KernelId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s.to_ascii_lowercase())
    }
}

/// A validated evaluation point: |x|, |y| <= 1 and |rho| <= RHO_MAX.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint {
    x: f64,
    y: f64,
    rho: f64,
}

pub(crate) fn check_rho(rho: f64) -> Result<()> {
    if !rho.is_finite() || rho.abs() > RHO_MAX {
        return Err(Error::Domain {
            name: "rho",
            value: rho,
            domain: "[-0.99, 0.99]",
        });
    }
    Ok(())
}

impl KernelPoint {
    pub fn new(x: f64, y: f64, rho: f64) -> Result<Self> {
        check_x(x)?;
        check_x(y)?;
        check_rho(rho)?;
        Ok(Self { x, y, rho })
    }

    /// Point for a diagonal kernel; y is set to x so that diagonal
    /// identities like `TUDiag = GUT at y = x` can be checked in place.
    pub fn diagonal(x: f64, rho: f64) -> Result<Self> {
        Self::new(x, x, rho)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

pub(crate) fn w_raw(x: f64, y: f64, rho: f64) -> f64 {
    // grouped as (1 - rho^2)^2 + 4 rho (rho x - y)(x - rho y), which keeps the
    // cancelling terms small near |x| = |y| = 1
    let r2 = rho * rho;
    (1.0 - r2).powi(2) + 4.0 * rho * (rho * x - y) * (x - rho * y)
}

/// The common denominator w(x, y | rho); strictly positive on the domain.
pub fn w_denom(x: f64, y: f64, rho: f64) -> Result<f64> {
    check_x(x)?;
    check_x(y)?;
    check_rho(rho)?;
    Ok(w_raw(x, y, rho))
}

/// Closed-form value of the kernel at a validated point.
pub fn kernel_closed(id: KernelId, p: &KernelPoint) -> f64 {
    let (x, y, rho) = (p.x, p.y, p.rho);
    let r2 = rho * rho;
    match id {
        KernelId::GU => (1.0 - r2) / w_raw(x, y, rho),
        KernelId::GT => {
            (1.0 - r2 - x * y * rho * (3.0 + r2) + 2.0 * r2 * (x * x + y * y)) / w_raw(x, y, rho)
        }
        KernelId::GUT => ((1.0 - r2) - 2.0 * rho * x * y + 2.0 * r2 * y * y) / w_raw(x, y, rho),
        KernelId::UShift1 => 2.0 * (x - rho * y) / w_raw(x, y, rho),
        KernelId::TShift1 => (y - rho * x) * (1.0 + r2 - 2.0 * rho * x * y) / w_raw(x, y, rho),
        KernelId::SymA => 2.0 * (x * x + y * y - 2.0 * rho * x * y) / w_raw(x, y, rho),
        KernelId::UShift2Diag => {
            (4.0 * x * x - 1.0 - rho) / ((1.0 - rho) * ((1.0 + rho).powi(2) - 4.0 * rho * x * x))
        }
        KernelId::EvenT => {
            (1.0 + r2 - 2.0 * x * x * r2)
                / ((1.0 + r2 - 2.0 * x * rho) * (1.0 + r2 + 2.0 * x * rho))
        }
        KernelId::OddT => {
            x * rho * (1.0 - r2) / ((1.0 + r2 - 2.0 * x * rho) * (1.0 + r2 + 2.0 * x * rho))
        }
        KernelId::TUDiag => {
            (1.0 + rho - 2.0 * rho * x * x)
                / ((1.0 - rho) * ((1.0 + rho).powi(2) - 4.0 * rho * x * x))
        }
        KernelId::T4 => {
            let r4 = r2 * r2;
            (1.0 - r4 + 8.0 * r4 * x * x * (1.0 - x * x))
                / (((1.0 + r2).powi(2) - 4.0 * r2 * x * x) * ((1.0 - r2).powi(2) + 4.0 * r2 * x * x))
        }
    }
}

/// Sliding window of three consecutive values P_j, P_{j+1}, P_{j+2}.
struct Window3 {
    two_x: f64,
    v0: f64,
    v1: f64,
    v2: f64,
}

impl Window3 {
    fn new(kind: ChebKind, x: f64) -> Self {
        let v1 = match kind {
            ChebKind::First => x,
            ChebKind::Second => 2.0 * x,
        };
        let v2 = 2.0 * x * v1 - 1.0;
        Window3 { two_x: 2.0 * x, v0: 1.0, v1, v2 }
    }

    fn step(&mut self) {
        let v3 = self.two_x * self.v2 - self.v1;
        self.v0 = self.v1;
        self.v1 = self.v2;
        self.v2 = v3;
    }
}

/// Pair (P_{m-1}, P_m) stepped k indices at a time, for the parity and
/// stride-4 diagonal series. Starts at m = 0 with P_{-1} taken from the
/// symmetric extension T_{-1}(x) = T_1(x) = x.
struct Stride {
    two_x: f64,
    prev: f64,
    cur: f64,
}

impl Stride {
    fn at_t0(x: f64) -> Self {
        Stride { two_x: 2.0 * x, prev: x, cur: 1.0 }
    }

    fn at_t1(x: f64) -> Self {
        Stride { two_x: 2.0 * x, prev: 1.0, cur: x }
    }

    fn step(&mut self, k: u32) {
        for _ in 0..k {
            (self.prev, self.cur) = (self.cur, self.two_x * self.cur - self.prev);
        }
    }
}

/// Partial sum of the kernel's defining series through series index `n`.
pub fn kernel_series(id: KernelId, p: &KernelPoint, n: u32) -> f64 {
    let (x, y, rho) = (p.x, p.y, p.rho);
    match id {
        KernelId::EvenT => {
            let mut t = Stride::at_t0(x);
            let mut pow = 1.0;
            let mut sum = 0.0;
            for _ in 0..=n {
                sum += pow * t.cur;
                pow *= rho * rho;
                t.step(2);
            }
            sum
        }
        KernelId::OddT => {
            let mut t = Stride::at_t1(x);
            let mut pow = rho;
            let mut sum = 0.0;
            for _ in 0..=n {
                sum += pow * t.cur;
                pow *= rho * rho;
                t.step(2);
            }
            sum
        }
        KernelId::T4 => {
            let mut t = Stride::at_t0(x);
            let mut pow = 1.0;
            let mut sum = 0.0;
            for _ in 0..=n {
                sum += pow * t.cur;
                pow *= rho.powi(4);
                t.step(4);
            }
            sum
        }
        _ => {
            let mut tx = Window3::new(ChebKind::First, x);
            let mut ty = Window3::new(ChebKind::First, y);
            let mut ux = Window3::new(ChebKind::Second, x);
            let mut uy = Window3::new(ChebKind::Second, y);
            let mut pow = 1.0;
            let mut sum = 0.0;
            for _ in 0..=n {
                let term = match id {
                    KernelId::GU => ux.v0 * uy.v0,
                    KernelId::GT => tx.v0 * ty.v0,
                    KernelId::GUT => ux.v0 * ty.v0,
                    KernelId::UShift1 => ux.v1 * uy.v0,
                    KernelId::TShift1 => tx.v0 * ty.v1,
                    KernelId::UShift2Diag => ux.v0 * ux.v2,
                    KernelId::SymA => x * ux.v1 * uy.v0 + y * uy.v1 * ux.v0,
                    KernelId::TUDiag => ux.v0 * tx.v0,
                    _ => unreachable!(),
                };
                sum += pow * term;
                pow *= rho;
                tx.step();
                ty.step();
                ux.step();
                uy.step();
            }
            sum
        }
    }
}

// Exact tails of the majorant series, r = |rho|, starting at index m:
//   sum_{j>=m} r^j         = r^m / (1-r)
//   sum_{j>=m} (j+1) r^j   = r^m ((m+1) - m r) / (1-r)^2
//   sum_{j>=m} (j+1)^2 r^j = r^m ((m+1)^2 - (2m^2+2m-1) r + m^2 r^2) / (1-r)^3
fn geo_tail(r: f64, m: f64) -> f64 {
    r.powf(m) / (1.0 - r)
}

fn lin_tail(r: f64, m: f64) -> f64 {
    r.powf(m) * ((m + 1.0) - m * r) / (1.0 - r).powi(2)
}

fn quad_tail(r: f64, m: f64) -> f64 {
    r.powf(m) * ((m + 1.0).powi(2) - (2.0 * m * m + 2.0 * m - 1.0) * r + m * m * r * r)
        / (1.0 - r).powi(3)
}

/// Rigorous upper bound on |kernel_closed - kernel_series(n)|, monotone
/// decreasing in `n` and vanishing as n grows. Built from |T_j| <= 1 and
/// |U_j| <= j + 1.
pub fn kernel_tail_bound(id: KernelId, rho: f64, n: u32) -> f64 {
    let r = rho.abs();
    if r == 0.0 {
        return 0.0;
    }
    let m = n as f64 + 1.0;
    match id {
        // terms bounded by (j+1)^2 r^j
        KernelId::GU => quad_tail(r, m),
        // |T_j T_j| <= 1 and |T_j T_{j+1}| <= 1
        KernelId::GT | KernelId::TShift1 => geo_tail(r, m),
        // |U_j T_j| <= j + 1
        KernelId::GUT | KernelId::TUDiag => lin_tail(r, m),
        // |U_{j+1} U_j| <= (j+2)(j+1) = (j+1)^2 + (j+1)
        KernelId::UShift1 => quad_tail(r, m) + lin_tail(r, m),
        // |U_j U_{j+2}| <= (j+1)(j+3) = (j+1)^2 + 2(j+1)
        KernelId::UShift2Diag => quad_tail(r, m) + 2.0 * lin_tail(r, m),
        // two mirrored shifted series, |x|, |y| <= 1
        KernelId::SymA => 2.0 * (quad_tail(r, m) + lin_tail(r, m)),
        // strides 2 and 4 in the exponent
        KernelId::EvenT => r.powf(2.0 * m) / (1.0 - r * r),
        KernelId::OddT => r.powf(2.0 * m + 1.0) / (1.0 - r * r),
        KernelId::T4 => r.powf(4.0 * m) / (1.0 - r.powi(4)),
    }
}

/// Smallest series index whose tail bound drops to `tol`, capped at 10^6.
pub fn terms_for_tolerance(id: KernelId, rho: f64, tol: f64) -> u32 {
    let mut lo = 0u32;
    let mut hi = 1u32;
    while kernel_tail_bound(id, rho, hi) > tol {
        lo = hi;
        if hi >= 1_000_000 {
            return hi;
        }
        hi = hi.saturating_mul(2);
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if kernel_tail_bound(id, rho, mid) > tol {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}
