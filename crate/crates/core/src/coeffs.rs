//! Pole coefficients, normalizers and symmetric functions for the product
//! density family.
//!
//! The product of single-pole generating functions decomposes into partial
//! fractions with one term per pole:
//!
//! ```text
//!   prod_j (1 - a_j x)/(1 + a_j^2 - 2 a_j x)
//!     = 1/2^n + sum_k b_{n,k} (1 - a_k^2) / (2^n (1 + a_k^2 - 2 a_k x))
//! ```
//!
//! where `b_{n,k} = prod_{j != k} gamma(a_k, a_j) / ((a_k - a_j)(1 - a_k a_j))`
//! and `gamma(a, b) = 2a - b - a^2 b`. The normalizer making the weighted
//! product a probability density is `B_n = 2^n / (1 + sum_k b_{n,k})`, and the
//! cosine-coefficient drivers are `t_j = sum_k b_{n,k} a_k^j`.

use crate::error::{Error, Result};

/// Minimal pairwise separation between pole parameters accepted by the
/// coefficient formulas; the (a_k - a_j) denominators cancel catastrophically
/// below this.
pub const SEPARATION_EPSILON: f64 = 1e-6;

/// An ordered vector of pole parameters a_1..a_n with |a_i| < 1.
///
/// Pairwise separation is *not* enforced at construction (the symmetric
/// functions are perfectly well defined for coincident entries); every
/// operation whose formulas divide by (a_k - a_j) checks it and returns
/// [`Error::IllConditioned`] instead.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamVector {
    a: Vec<f64>,
}

impl ParamVector {
    pub fn new(a: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Unsupported("parameter vector must be nonempty".into()));
        }
        for &ai in &a {
            if !ai.is_finite() || ai.abs() >= 1.0 {
                return Err(Error::Domain {
                    name: "a",
                    value: ai,
                    domain: "(-1, 1)",
                });
            }
        }
        Ok(Self { a })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.a
    }

    /// Errors unless all pairs are separated by at least SEPARATION_EPSILON.
    pub fn check_separated(&self) -> Result<()> {
        for i in 0..self.a.len() {
            for j in i + 1..self.a.len() {
                if (self.a[i] - self.a[j]).abs() < SEPARATION_EPSILON {
                    return Err(Error::IllConditioned {
                        i,
                        j,
                        ai: self.a[i],
                        aj: self.a[j],
                        min: SEPARATION_EPSILON,
                    });
                }
            }
        }
        Ok(())
    }
}

/// gamma(a, b) = 2a - b - a^2 b.
pub fn gamma_ab(a: f64, b: f64) -> f64 {
    2.0 * a - b - a * a * b
}

/// The coefficients b_{n,1}..b_{n,n}. For n = 1 the empty product gives `[1]`.
///
/// Factors are accumulated with |a_j| descending so the products are
/// reproducible across parameter orderings.
pub fn b_coeffs(params: &ParamVector) -> Result<Vec<f64>> {
    params.check_separated()?;
    let a = params.values();
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by(|&i, &j| a[j].abs().partial_cmp(&a[i].abs()).unwrap());
    Ok((0..a.len())
        .map(|k| {
            let mut p = 1.0;
            for &j in &order {
                if j != k {
                    p *= gamma_ab(a[k], a[j]) / ((a[k] - a[j]) * (1.0 - a[k] * a[j]));
                }
            }
            p
        })
        .collect())
}

/// The normalizer B_n = 2^n / (1 + sum_k b_{n,k}).
pub fn normalizer(params: &ParamVector) -> Result<f64> {
    let b_sum: f64 = b_coeffs(params)?.iter().sum();
    Ok(2f64.powi(params.len() as i32) / (1.0 + b_sum))
}

/// Closed forms of the normalizer for n = 2, 3, 4 in terms of the elementary
/// symmetric functions S_k and the pair product P_n:
///
/// ```text
///   B_2 = 2 P_2 / (P_2 + 1)
///   B_3 = 4 P_3 / (P_3 + 3 - S_2)
///   B_4 = 8 P_4 / (P_4 + 7 - 3 S_2 + S_3 (S_1 - S_3) - S_4 (4 - 3 S_2 + 3 S_4))
/// ```
///
/// The n = 3 denominator uses the full three-parameter pair product P_3; a
/// truncated reading with the pair product of the first two parameters fails
/// against [`normalizer`] by several percent (see the unit tests).
pub fn normalizer_closed(params: &ParamVector) -> Result<f64> {
    let sf = sym_funcs(params);
    let p = sf.pair_product();
    match params.len() {
        2 => Ok(2.0 * p / (p + 1.0)),
        3 => Ok(4.0 * p / (p + 3.0 - sf.s(2))),
        4 => {
            let (s1, s2, s3, s4) = (sf.s(1), sf.s(2), sf.s(3), sf.s(4));
            let den = p + 7.0 - 3.0 * s2 + s3 * (s1 - s3) - s4 * (4.0 - 3.0 * s2 + 3.0 * s4);
            Ok(8.0 * p / den)
        }
        n => Err(Error::Unsupported(format!(
            "closed-form normalizer covers n in {{2, 3, 4}}, got n = {n}"
        ))),
    }
}

/// Elementary symmetric functions S_1..S_n, the pair product
/// P_n = prod_{i<j} (1 - a_i a_j), and the complete homogeneous functions
/// Delta_m of the parameter vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricFunctions {
    elementary: Vec<f64>,
    pair_product: f64,
    params: Vec<f64>,
}

impl SymmetricFunctions {
    /// S_k for 1 <= k <= n.
    pub fn s(&self, k: usize) -> f64 {
        self.elementary[k - 1]
    }

    /// S_1..S_n in order.
    pub fn elementary(&self) -> &[f64] {
        &self.elementary
    }

    /// P_n = prod_{i<j} (1 - a_i a_j); 1 for n = 1 (empty product).
    pub fn pair_product(&self) -> f64 {
        self.pair_product
    }

    /// Delta_m: the sum of all degree-m monomials in the parameters
    /// (complete homogeneous symmetric function); Delta_0 = 1, Delta_1 = S_1.
    pub fn delta(&self, m: usize) -> f64 {
        let mut h = vec![0.0; m + 1];
        h[0] = 1.0;
        for &ai in &self.params {
            for k in 1..=m {
                h[k] += ai * h[k - 1];
            }
        }
        h[m]
    }
}

/// Computes the symmetric-function set; coincident parameters are fine here.
pub fn sym_funcs(params: &ParamVector) -> SymmetricFunctions {
    let a = params.values();
    let n = a.len();
    let mut e = vec![0.0; n + 1];
    e[0] = 1.0;
    for (i, &ai) in a.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            e[k] += ai * e[k - 1];
        }
    }
    let mut p = 1.0;
    for i in 0..n {
        for j in i + 1..n {
            p *= 1.0 - a[i] * a[j];
        }
    }
    SymmetricFunctions {
        elementary: e[1..].to_vec(),
        pair_product: p,
        params: a.to_vec(),
    }
}

/// t_j = sum_k b_{n,k} a_k^j, the j-th cosine-coefficient driver.
/// t_0 = sum_k b_{n,k}.
///
/// For n = 2 and j >= 1 the subtraction-free closed form [`t2_closed`] is
/// used, which stays accurate when the two poles are nearly coincident.
pub fn t_coeff(j: u32, params: &ParamVector) -> Result<f64> {
    if params.len() == 2 && j >= 1 {
        params.check_separated()?;
        let a = params.values();
        return Ok(t2_closed(j, a[0], a[1]));
    }
    let b = b_coeffs(params)?;
    let a = params.values();
    Ok(a.iter()
        .zip(&b)
        .map(|(&ak, &bk)| bk * ak.powi(j as i32))
        .sum())
}

/// t_0..t_jmax in one pass, reusing the pole coefficients.
pub fn t_coeffs_upto(jmax: u32, params: &ParamVector) -> Result<Vec<f64>> {
    let b = b_coeffs(params)?;
    let a = params.values();
    if a.len() == 2 {
        let mut out = Vec::with_capacity(jmax as usize + 1);
        out.push(b.iter().sum());
        // Delta_j(a1, a2) by the recurrence Delta_j = a1 Delta_{j-1} + a2^j
        let (a1, a2) = (a[0], a[1]);
        let inv = 1.0 / (1.0 - a1 * a2);
        let mut delta = 1.0;
        let mut p1 = 1.0;
        let mut p2 = 1.0;
        for _ in 1..=jmax {
            p1 *= a1;
            p2 *= a2;
            delta = a1 * delta + p2;
            out.push(delta + (p1 + p2) * inv);
        }
        return Ok(out);
    }
    let mut pow = vec![1.0; a.len()];
    let mut out = Vec::with_capacity(jmax as usize + 1);
    for j in 0..=jmax {
        if j > 0 {
            for (p, &ak) in pow.iter_mut().zip(a) {
                *p *= ak;
            }
        }
        out.push(pow.iter().zip(&b).map(|(p, bk)| p * bk).sum());
    }
    Ok(out)
}

/// Subtraction-free form of t_j for two poles:
/// Delta_j(a1, a2) + (a1^j + a2^j)/(1 - a1 a2).
pub fn t2_closed(j: u32, a1: f64, a2: f64) -> f64 {
    let mut delta = 1.0;
    let mut p2 = 1.0;
    for _ in 0..j {
        p2 *= a2;
        delta = a1 * delta + p2;
    }
    delta + (a1.powi(j as i32) + a2.powi(j as i32)) / (1.0 - a1 * a2)
}

/// One pole's share of the decomposition: `coefficient / (1 + pole^2 - 2 pole x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleTerm {
    /// Position of the pole parameter in the input vector.
    pub index: usize,
    /// b_{n,k} (1 - a_k^2) / 2^n.
    pub coefficient: f64,
    /// The pole parameter a_k itself.
    pub pole: f64,
}

/// The decomposition `constant + sum_k coefficient_k / (1 + a_k^2 - 2 a_k x)`
/// of the generating-function product, with constant = 1/2^n.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFractionDecomposition {
    pub constant: f64,
    pub terms: Vec<PoleTerm>,
}

impl PartialFractionDecomposition {
    /// Evaluates the decomposed right-hand side at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.constant
            + self
                .terms
                .iter()
                .map(|t| t.coefficient / (1.0 + t.pole * t.pole - 2.0 * t.pole * x))
                .sum::<f64>()
    }
}

/// Decomposes `prod_j (1 - a_j x)/(1 + a_j^2 - 2 a_j x)` into partial
/// fractions.
pub fn partial_fractions(params: &ParamVector) -> Result<PartialFractionDecomposition> {
    let b = b_coeffs(params)?;
    let scale = 2f64.powi(-(params.len() as i32));
    let terms = params
        .values()
        .iter()
        .zip(&b)
        .enumerate()
        .map(|(index, (&pole, &bk))| PoleTerm {
            index,
            coefficient: bk * (1.0 - pole * pole) * scale,
            pole,
        })
        .collect();
    Ok(PartialFractionDecomposition { constant: scale, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cheb::{gen_fn_unchecked, ChebKind};
    use crate::quadrature::{QuadRule, DEFAULT_ORACLE_NODES};
    use proptest::prelude::*;

    fn pv(a: &[f64]) -> ParamVector {
        ParamVector::new(a.to_vec()).unwrap()
    }

    fn phi_product(a: &[f64], x: f64) -> f64 {
        a.iter()
            .map(|&ai| gen_fn_unchecked(ChebKind::First, ai, x))
            .product()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_ab(0.0, 0.0), 0.0);
        let a = 0.37;
        assert!((gamma_ab(a, a) - (a - a.powi(3))).abs() < 1e-16);
        assert!((gamma_ab(0.5, -0.25) - 1.3125).abs() < 1e-16);
    }

    #[test]
    fn b_coeffs_small_cases() {
        assert_eq!(b_coeffs(&pv(&[0.3])).unwrap(), vec![1.0]);
        // sum b_{2,k} = (3 - a1 a2)/(1 - a1 a2)
        let (a1, a2) = (0.62, -0.41);
        let sum: f64 = b_coeffs(&pv(&[a1, a2])).unwrap().iter().sum();
        assert!((sum - (3.0 - a1 * a2) / (1.0 - a1 * a2)).abs() < 1e-13);
    }

    #[test]
    fn separation_enforced() {
        let p = pv(&[0.5, 0.5 + 1e-8]);
        assert!(matches!(b_coeffs(&p), Err(Error::IllConditioned { .. })));
        assert!(matches!(normalizer(&p), Err(Error::IllConditioned { .. })));
        assert!(matches!(t_coeff(3, &p), Err(Error::IllConditioned { .. })));
        assert!(matches!(partial_fractions(&p), Err(Error::IllConditioned { .. })));
        // but the symmetric functions accept coincident parameters
        let sf = sym_funcs(&pv(&[0.5, 0.5, 0.5]));
        assert!((sf.pair_product() - 0.421875).abs() < 1e-15);
    }

    #[test]
    fn param_vector_validation() {
        assert!(ParamVector::new(vec![]).is_err());
        assert!(ParamVector::new(vec![1.0]).is_err());
        assert!(ParamVector::new(vec![0.3, f64::NAN]).is_err());
    }

    #[test]
    fn normalizer_base_cases() {
        assert!((normalizer(&pv(&[0.3])).unwrap() - 1.0).abs() < 1e-15);
        // B_2([0.5, -0.5]) = 2 (1 + 0.25)/(2 + 0.25) = 10/9
        let b2 = normalizer(&pv(&[0.5, -0.5])).unwrap();
        assert!((b2 - 10.0 / 9.0).abs() < 1e-14);
        assert!((normalizer_closed(&pv(&[0.5, -0.5])).unwrap() - 10.0 / 9.0).abs() < 1e-14);
        // near-zero parameters degenerate towards the plain arcsine density
        let b = normalizer(&pv(&[1e-3, -2e-3])).unwrap();
        assert!((b - 1.0).abs() < 1e-5);
        let bc = normalizer_closed(&pv(&[0.0, 1e-6])).unwrap();
        assert!((bc - 1.0).abs() < 1e-5);
    }

    #[test]
    fn normalizer_closed_unsupported_sizes() {
        assert!(matches!(normalizer_closed(&pv(&[0.3])), Err(Error::Unsupported(_))));
        assert!(normalizer_closed(&pv(&[0.1, 0.2, 0.3, 0.4, 0.5])).is_err());
    }

    #[test]
    fn closed_matches_general_n2_n3_n4() {
        let mut state = 4321u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            1.8 * ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.9
        };
        for n in [2usize, 3, 4] {
            for _ in 0..200 {
                let a: Vec<f64> = loop {
                    let c: Vec<f64> = (0..n).map(|_| next()).collect();
                    let mut ok = true;
                    for i in 0..n {
                        for j in i + 1..n {
                            ok &= (c[i] - c[j]).abs() > 0.01;
                        }
                    }
                    if ok {
                        break c;
                    }
                };
                let p = pv(&a);
                let general = normalizer(&p).unwrap();
                let closed = normalizer_closed(&p).unwrap();
                assert!(
                    ((general - closed) / general).abs() < 1e-11,
                    "n={n} a={a:?} general={general} closed={closed}"
                );
            }
        }
    }

    #[test]
    fn n3_denominator_uses_full_pair_product() {
        // The competing reading (pair product of the first two entries only)
        // disagrees with the general formula, so it is ruled out.
        let a = [0.5, -0.3, 0.7];
        let p = pv(&a);
        let general = normalizer(&p).unwrap();
        let sf = sym_funcs(&p);
        let wrong = 4.0 * sf.pair_product() / ((1.0 - a[0] * a[1]) + 3.0 - sf.s(2));
        assert!(((general - wrong) / general).abs() > 1e-3);
        assert!(((general - normalizer_closed(&p).unwrap()) / general).abs() < 1e-13);
    }

    #[test]
    fn sym_funcs_examples() {
        let sf = sym_funcs(&pv(&[0.3, -0.6]));
        assert!((sf.s(1) - (0.3 - 0.6)).abs() < 1e-16);
        assert!((sf.s(2) - (0.3 * -0.6)).abs() < 1e-16);
        assert_eq!(sf.delta(0), 1.0);
        assert!((sf.delta(1) - sf.s(1)).abs() < 1e-16);
        // Delta_k(a1, a2) = sum_{j=0}^{k} a1^j a2^{k-j}
        let (a1, a2) = (0.3f64, -0.6f64);
        for k in 0..6u32 {
            let direct: f64 = (0..=k)
                .map(|j| a1.powi(j as i32) * a2.powi((k - j) as i32))
                .sum();
            assert!((sf.delta(k as usize) - direct).abs() < 1e-14);
        }
        // Newton sanity: Delta_2 = S_1^2 - S_2
        assert!((sf.delta(2) - (sf.s(1).powi(2) - sf.s(2))).abs() < 1e-14);
        assert_eq!(sym_funcs(&pv(&[0.9])).pair_product(), 1.0);
    }

    #[test]
    fn t_coeff_examples() {
        // single pole: b = [1], so t_j = a^j
        let a = 0.57;
        for j in 0..8u32 {
            assert!((t_coeff(j, &pv(&[a])).unwrap() - a.powi(j as i32)).abs() < 1e-15);
        }
        // t_0 for two poles
        let (a1, a2) = (0.44, -0.18);
        let t0 = t_coeff(0, &pv(&[a1, a2])).unwrap();
        assert!((t0 - (3.0 - a1 * a2) / (1.0 - a1 * a2)).abs() < 1e-13);
        // the closed two-pole form agrees with the generic sum
        for j in 1..=9u32 {
            let generic: f64 = b_coeffs(&pv(&[a1, a2]))
                .unwrap()
                .iter()
                .zip([a1, a2])
                .map(|(b, a)| b * a.powi(j as i32))
                .sum();
            assert!((t_coeff(j, &pv(&[a1, a2])).unwrap() - generic).abs() < 1e-12);
        }
    }

    #[test]
    fn t2_closed_examples() {
        let (a1, a2) = (0.4f64, -0.2f64);
        let j1 = t2_closed(1, a1, a2);
        assert!((j1 - (a1 + a2) * (2.0 - a1 * a2) / (1.0 - a1 * a2)).abs() < 1e-14);
        assert!((t2_closed(1, 0.3, 0.0) - 0.6).abs() < 1e-15);
        let j3 = t2_closed(3, a1, a2);
        let generic = t_coeff(3, &pv(&[a1, a2])).unwrap();
        assert!((j3 - generic).abs() < 1e-13);
    }

    #[test]
    fn t_coeffs_upto_matches_t_coeff() {
        for a in [&[0.61][..], &[0.4, -0.2], &[0.5, -0.3, 0.7]] {
            let p = pv(a);
            let batch = t_coeffs_upto(12, &p).unwrap();
            for (j, &tj) in batch.iter().enumerate() {
                assert!((tj - t_coeff(j as u32, &p).unwrap()).abs() < 1e-12, "{a:?} j={j}");
            }
        }
    }

    #[test]
    fn partial_fractions_single_pole() {
        let a = 0.73;
        let d = partial_fractions(&pv(&[a])).unwrap();
        assert_eq!(d.constant, 0.5);
        assert_eq!(d.terms.len(), 1);
        assert!((d.terms[0].coefficient - (1.0 - a * a) / 2.0).abs() < 1e-16);
        assert_eq!(d.terms[0].pole, a);
        for k in 0..=20 {
            let x = -0.999 + 1.998 * k as f64 / 20.0;
            assert!((d.eval(x) - phi_product(&[a], x)).abs() < 1e-15);
        }
    }

    #[test]
    fn partial_fractions_reconstruction() {
        let cases: [&[f64]; 3] = [
            &[0.62, -0.41],
            &[0.5, -0.3, 0.7],
            &[0.71, 0.43, 0.11, -0.27, -0.65],
        ];
        for a in cases {
            let d = partial_fractions(&pv(a)).unwrap();
            let tol = if a.len() <= 2 { 1e-12 } else { 1e-9 };
            for k in 0..=200 {
                let x = -0.999 + 1.998 * k as f64 / 200.0;
                let err = (d.eval(x) - phi_product(a, x)).abs();
                assert!(err < tol, "n={} x={x} err={err:e}", a.len());
            }
        }
    }

    #[test]
    fn two_pole_resolvent_identity() {
        // 1/((1+a^2-2ax)(1+b^2-2bx)) splits into the two single-pole pieces
        let (a, b) = (0.55f64, -0.35f64);
        for k in 0..=100 {
            let x = -1.0 + 2.0 * k as f64 / 100.0;
            let pa = 1.0 + a * a - 2.0 * a * x;
            let pb = 1.0 + b * b - 2.0 * b * x;
            let lhs = 1.0 / (pa * pb);
            let rhs = a / ((a - b) * (1.0 - a * b) * pa) + b / ((b - a) * (1.0 - a * b) * pb);
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn normalizer_agrees_with_quadrature() {
        let rule = QuadRule::gauss_chebyshev(ChebKind::First, DEFAULT_ORACLE_NODES);
        for a in [&[0.5][..], &[0.5, -0.5], &[0.8, 0.2, -0.4], &[0.7, 0.3, -0.1, -0.6]] {
            let p = pv(a);
            let b = normalizer(&p).unwrap();
            let integral = rule.integrate(|x| phi_product(a, x));
            assert!((b * integral - 1.0).abs() < 1e-9, "{a:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn reconstruction_property(
            raw in proptest::collection::vec(-0.85f64..=0.85, 1..=8),
        ) {
            let mut a = raw;
            a.sort_by(|p, q| p.partial_cmp(q).unwrap());
            prop_assume!(a.windows(2).all(|w| (w[1] - w[0]).abs() > 0.05));
            let d = partial_fractions(&pv(&a)).unwrap();
            for k in 0..=100 {
                let x = -0.999 + 1.998 * k as f64 / 100.0;
                prop_assert!((d.eval(x) - phi_product(&a, x)).abs() < 1e-9);
            }
        }

        #[test]
        fn permutation_invariance(
            raw in proptest::collection::vec(-0.85f64..=0.85, 2..=6),
            rot in 1usize..6,
        ) {
            let mut a = raw;
            a.sort_by(|p, q| p.partial_cmp(q).unwrap());
            prop_assume!(a.windows(2).all(|w| (w[1] - w[0]).abs() > 0.05));
            let mut shuffled = a.clone();
            shuffled.rotate_left(rot % a.len());
            let p1 = pv(&a);
            let p2 = pv(&shuffled);
            let b1 = normalizer(&p1).unwrap();
            let b2 = normalizer(&p2).unwrap();
            prop_assert!(((b1 - b2) / b1).abs() < 1e-12);
            for j in [1u32, 3, 7] {
                let t1 = t_coeff(j, &p1).unwrap();
                let t2 = t_coeff(j, &p2).unwrap();
                prop_assert!((t1 - t2).abs() <= 1e-12 * t1.abs().max(1.0));
            }
        }
    }
}
