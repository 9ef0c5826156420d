//! Gauss-Chebyshev quadrature against the two probability weights on (-1, 1):
//! the arcsine density f_C(x) = 1/(pi sqrt(1-x^2)) (first kind) and the
//! semicircle density f_W(x) = (2/pi) sqrt(1-x^2) (second kind).
//!
//! Nodes and weights come from the explicit cosine formulas, so rules are
//! bit-reproducible. An n-point rule integrates polynomials of degree
//! <= 2n - 1 exactly against its weight.

use crate::cheb::ChebKind;
use std::f64::consts::PI;

/// Default node count for oracle-grade integration. All integrands in this
/// crate are analytic with poles kept off [-1, 1] by at least (1 - |a|)^2,
/// which gives sub-1e-10 error at 512 nodes for |a| <= 0.9.
pub const DEFAULT_ORACLE_NODES: usize = 512;

/// An immutable Gauss-Chebyshev rule: `integrate(f)` approximates the
/// expectation of `f` under the rule's weight density.
#[derive(Debug, Clone)]
pub struct QuadRule {
    kind: ChebKind,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadRule {
    /// The n-point rule for the given weight. First kind: nodes
    /// cos((2i-1)pi/2n) with uniform weights 1/n. Second kind: nodes
    /// cos(i pi/(n+1)) with weights (2/(n+1)) sin^2(i pi/(n+1)).
    /// Nodes are returned sorted ascending, strictly inside (-1, 1).
    pub fn gauss_chebyshev(kind: ChebKind, n: usize) -> QuadRule {
        assert!(n >= 1, "quadrature rule needs at least one node");
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        match kind {
            ChebKind::First => {
                let w = 1.0 / n as f64;
                // i = n..1 yields ascending nodes
                for i in (1..=n).rev() {
                    nodes.push((((2 * i - 1) as f64) * PI / (2.0 * n as f64)).cos());
                    weights.push(w);
                }
            }
            ChebKind::Second => {
                let m = (n + 1) as f64;
                for i in (1..=n).rev() {
                    let th = i as f64 * PI / m;
                    nodes.push(th.cos());
                    weights.push(2.0 / m * th.sin().powi(2));
                }
            }
        }
        QuadRule { kind, nodes, weights }
    }

    pub fn kind(&self) -> ChebKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `sum_i w_i f(x_i)`, the weighted-expectation approximation of `f`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Uniform theta-grid trapezoid approximation of `int f(x) f_C(x) dx`,
/// i.e. (1/m) [ (f(1) + f(-1))/2 + sum_{k=1}^{m-1} f(cos(k pi / m)) ].
///
/// The substitution x = cos(theta) makes the integrand a smooth even-periodic
/// function of theta, so the trapezoid sum converges spectrally. It samples a
/// different grid than the Gauss rules (and touches the endpoints), which
/// makes it an independent cross-check; `f` must be finite at x = +-1.
pub fn theta_trapezoid(mut f: impl FnMut(f64) -> f64, m: usize) -> f64 {
    assert!(m >= 1);
    let mut sum = 0.5 * (f(1.0) + f(-1.0));
    for k in 1..m {
        sum += f((k as f64 * PI / m as f64).cos());
    }
    sum / m as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cheb::{cheb_eval_unchecked, gen_fn_unchecked};

    #[test]
    fn single_node_first_kind() {
        let rule = QuadRule::gauss_chebyshev(ChebKind::First, 1);
        assert!(rule.nodes()[0].abs() < 1e-16);
        assert_eq!(rule.weights()[0], 1.0);
    }

    #[test]
    fn nodes_sorted_interior_weights_normalized() {
        for kind in [ChebKind::First, ChebKind::Second] {
            for n in [1usize, 2, 7, 64, 513] {
                let rule = QuadRule::gauss_chebyshev(kind, n);
                assert_eq!(rule.len(), n);
                for w in rule.nodes().windows(2) {
                    assert!(w[0] < w[1]);
                }
                assert!(rule.nodes().iter().all(|x| x.abs() < 1.0));
                assert!(rule.weights().iter().all(|w| *w > 0.0));
                let total: f64 = rule.weights().iter().sum();
                assert!((total - 1.0).abs() < 1e-13, "{kind:?} n={n}");
            }
        }
    }

    #[test]
    fn constant_integrates_to_one() {
        let rule = QuadRule::gauss_chebyshev(ChebKind::First, 64);
        assert!((rule.integrate(|_| 1.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn t_orthonormality_table() {
        let rule = QuadRule::gauss_chebyshev(ChebKind::First, 64);
        for i in 0..=12u32 {
            for j in 0..=12u32 {
                let got = rule.integrate(|x| {
                    cheb_eval_unchecked(ChebKind::First, i, x)
                        * cheb_eval_unchecked(ChebKind::First, j, x)
                });
                let want = if i != j {
                    0.0
                } else if i == 0 {
                    1.0
                } else {
                    0.5
                };
                assert!((got - want).abs() < 1e-12, "i={i} j={j} got={got}");
            }
        }
    }

    #[test]
    fn t8_and_t0_moments() {
        let rule = QuadRule::gauss_chebyshev(ChebKind::First, 64);
        let m8 = rule.integrate(|x| cheb_eval_unchecked(ChebKind::First, 8, x));
        let m0 = rule.integrate(|_| 1.0);
        assert!(m8.abs() < 1e-13);
        assert!((m0 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn u_moments_under_semicircle() {
        let rule = QuadRule::gauss_chebyshev(ChebKind::Second, 64);
        let m1 = rule.integrate(|x| cheb_eval_unchecked(ChebKind::Second, 1, x));
        let m0 = rule.integrate(|_| 1.0);
        assert!(m1.abs() < 1e-13);
        assert!((m0 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn u_parity_moments_under_arcsine() {
        // int U_j f_C dx = 1 for even j, 0 for odd j
        let rule = QuadRule::gauss_chebyshev(ChebKind::First, DEFAULT_ORACLE_NODES);
        for j in 0..=40u32 {
            let got = rule.integrate(|x| cheb_eval_unchecked(ChebKind::Second, j, x));
            let want = if j % 2 == 0 { 1.0 } else { 0.0 };
            assert!((got - want).abs() < 1e-12, "j={j} got={got}");
        }
    }

    #[test]
    fn t_moments_under_semicircle() {
        // (2/pi) int T_j(y) sqrt(1-y^2) dy = 1 (j=0), -1/2 (j=2), 0 otherwise.
        // The j = 1 moment in particular vanishes by symmetry; the whole
        // second-kind marginal closed form in `densities` rests on the
        // j = 2 value being -1/2.
        let rule = QuadRule::gauss_chebyshev(ChebKind::Second, 64);
        let want = [1.0, 0.0, -0.5, 0.0, 0.0, 0.0];
        for (j, w) in want.iter().enumerate() {
            let got = rule.integrate(|y| cheb_eval_unchecked(ChebKind::First, j as u32, y));
            assert!((got - w).abs() < 1e-13, "j={j} got={got}");
        }
    }

    #[test]
    fn rational_integrand_matches_theta_trapezoid() {
        // int phi_T(x|0.5)^2 f_C(x) dx, Gauss vs large trapezoid reference
        let f = |x: f64| gen_fn_unchecked(ChebKind::First, 0.5, x).powi(2);
        let reference = theta_trapezoid(f, 1_000_000);
        let rule = QuadRule::gauss_chebyshev(ChebKind::First, DEFAULT_ORACLE_NODES);
        assert!((rule.integrate(f) - reference).abs() < 1e-9);
    }

    #[test]
    fn degree_exactness_boundary() {
        // with n nodes, monomial-degree 2n-1 is still exact
        let n = 6;
        let rule = QuadRule::gauss_chebyshev(ChebKind::First, n);
        // int T_{2n-2} T_0 f_C = 0 needs degree 2n-2
        let got = rule.integrate(|x| cheb_eval_unchecked(ChebKind::First, (2 * n - 2) as u32, x));
        assert!(got.abs() < 1e-13);
    }
}
