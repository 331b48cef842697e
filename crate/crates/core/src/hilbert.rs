//! The weighted half-line space `L^{2,α}(ℝ⁺, x^α e^{-x} dx)`.
//!
//! Signals are stored as samples at the nodes of one Gauss–Laguerre rule, and
//! the space is a right quaternionic module: scalars multiply values on the
//! right, and the inner product is conjugate-linear in its left argument.
//!
//! Extreme rule weights underflow long before the products `w_i f(x_i)²` do,
//! so every weighted sum here is formed in log scale.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{gauss_rule, Recurrence};
use crate::quaternion::Quaternion;
use crate::specfun::{laguerre, ln_gamma, ln_gamma_pos, AlphaParam};

/// Largest rule size accepted by [`build_rule`].
pub const MAX_RULE_SIZE: usize = 512;
pub const DEFAULT_RULE_SIZE: usize = 128;
pub const DEFAULT_CUTOFF: usize = 40;

/// Gauss rule for `∫₀^∞ f(x) x^α e^{-x} dx`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussLaguerreRule {
    alpha: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    log_weights: Vec<f64>,
}

impl GaussLaguerreRule {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn count(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes in ascending order.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Weights; the trailing ones may have underflowed to zero.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Natural logarithms of the weights, always finite.
    pub fn log_weights(&self) -> &[f64] {
        &self.log_weights
    }

    /// `Σ_i w_i p(x_i)`.
    pub fn integrate(&self, p: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * p(x)).sum()
    }

    fn same_as(&self, other: &GaussLaguerreRule) -> bool {
        std::ptr::eq(self, other) || (self.alpha == other.alpha && self.nodes == other.nodes)
    }
}

/// `M`-point Gauss–Laguerre rule for the weight `x^α e^{-x}`.
pub fn build_rule(alpha: f64, m: usize) -> Result<GaussLaguerreRule> {
    let alpha = AlphaParam::new(alpha)?.get();
    if m == 0 || m > MAX_RULE_SIZE {
        return Err(Error::domain(format!(
            "rule size must be in 1..={MAX_RULE_SIZE}, got {m}"
        )));
    }
    let rec = Recurrence {
        a: (0..m).map(|k| 2.0 * k as f64 + alpha + 1.0).collect(),
        b: (0..=m).map(|k| k as f64 * (k as f64 + alpha)).collect(),
        mu0: ln_gamma(alpha + 1.0)?.exp(),
    };
    let rule = gauss_rule(&rec, m)?;
    if rule.nodes[0] <= 0.0 {
        return Err(Error::Numerical("Gauss–Laguerre node left the half-line".into()));
    }
    Ok(GaussLaguerreRule {
        alpha,
        weights: rule.log_weights.iter().map(|l| l.exp()).collect(),
        nodes: rule.nodes,
        log_weights: rule.log_weights,
    })
}

/// `φ_n^α(x) = (n!/Γ(α+n+1))^{1/2} L_n^{(α)}(x)`.
pub fn phi(n: usize, alpha: f64, x: f64) -> f64 {
    let ln_norm = 0.5 * (ln_gamma_pos(n as f64 + 1.0) - ln_gamma_pos(alpha + n as f64 + 1.0));
    ln_norm.exp() * laguerre(n, alpha, x)
}

/// `[φ_0(x), …, φ_{count-1}(x)]` from the orthonormal recurrence.
pub fn phi_all(count: usize, alpha: f64, x: f64) -> Vec<f64> {
    phi_all_scaled(count, alpha, x, 0.0)
}

const RESCALE: f64 = 1e150;

/// `e^{log_scale} · φ_n(x)` for `n < count`, without intermediate overflow.
pub(crate) fn phi_all_scaled(count: usize, alpha: f64, x: f64, log_scale: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let mut exponent = log_scale - 0.5 * ln_gamma_pos(alpha + 1.0);
    let (mut prev, mut cur) = (0.0_f64, 1.0_f64);
    for k in 0..count {
        out.push(cur * exponent.exp());
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf * (kf + alpha)).sqrt() * prev)
            / ((kf + 1.0) * (kf + alpha + 1.0)).sqrt();
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            prev /= RESCALE;
            cur /= RESCALE;
            exponent += RESCALE.ln();
        }
    }
    out
}

/// Quaternion samples of a function at the nodes of a rule.
#[derive(Clone, Debug)]
pub struct RadialSignal {
    rule: Arc<GaussLaguerreRule>,
    values: Vec<Quaternion>,
}

impl RadialSignal {
    pub fn new(rule: Arc<GaussLaguerreRule>, values: Vec<Quaternion>) -> Result<Self> {
        if values.len() != rule.count() {
            return Err(Error::domain(format!(
                "signal has {} samples but the rule has {} nodes",
                values.len(),
                rule.count()
            )));
        }
        Ok(RadialSignal { rule, values })
    }

    /// Samples `f` at the nodes of `rule`.
    pub fn from_fn(rule: Arc<GaussLaguerreRule>, f: impl Fn(f64) -> Quaternion) -> Self {
        let values = rule.nodes().iter().map(|&x| f(x)).collect();
        RadialSignal { rule, values }
    }

    pub fn zero(rule: Arc<GaussLaguerreRule>) -> Self {
        let values = vec![Quaternion::ZERO; rule.count()];
        RadialSignal { rule, values }
    }

    pub fn rule(&self) -> &Arc<GaussLaguerreRule> {
        &self.rule
    }

    pub fn values(&self) -> &[Quaternion] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Quaternion> {
        self.values
    }

    /// `f · λ` (right scalar multiplication).
    pub fn scale_right(&self, lambda: Quaternion) -> Self {
        let values = self.values.iter().map(|&v| v * lambda).collect();
        RadialSignal { rule: self.rule.clone(), values }
    }

    pub fn sub(&self, other: &RadialSignal) -> Result<Self> {
        self.check_rule(other)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| a - b).collect();
        Ok(RadialSignal { rule: self.rule.clone(), values })
    }

    pub fn add(&self, other: &RadialSignal) -> Result<Self> {
        self.check_rule(other)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| a + b).collect();
        Ok(RadialSignal { rule: self.rule.clone(), values })
    }

    /// `‖f‖_α`.
    pub fn norm(&self) -> f64 {
        let s: f64 = self
            .values
            .iter()
            .zip(self.rule.log_weights())
            .filter(|(v, _)| v.norm_sqr() > 0.0)
            .map(|(v, &lw)| (lw + 2.0 * v.norm().ln()).exp())
            .sum();
        s.sqrt()
    }

    fn check_rule(&self, other: &RadialSignal) -> Result<()> {
        if self.rule.same_as(&other.rule) {
            Ok(())
        } else {
            Err(Error::RuleMismatch)
        }
    }
}

/// `⟨f, g⟩_α = Σ_i w_i conj(f(x_i)) g(x_i)`.
pub fn inner_product(f: &RadialSignal, g: &RadialSignal) -> Result<Quaternion> {
    f.check_rule(g)?;
    let mut acc = Quaternion::ZERO;
    for ((a, b), &lw) in f.values.iter().zip(&g.values).zip(f.rule.log_weights()) {
        let (na, nb) = (a.norm(), b.norm());
        if na == 0.0 || nb == 0.0 {
            continue;
        }
        let mag = (lw + na.ln() + nb.ln()).exp();
        acc += (a.conj() / na) * (*b / nb) * mag;
    }
    Ok(acc)
}

/// Laguerre coefficients `c_n` of `f = Σ φ_n c_n`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoeffVector {
    pub coeffs: Vec<Quaternion>,
}

impl CoeffVector {
    pub fn new(coeffs: Vec<Quaternion>) -> Self {
        CoeffVector { coeffs }
    }

    /// The basis vector `e_n` padded to `len` entries.
    pub fn basis(n: usize, len: usize) -> Self {
        let mut coeffs = vec![Quaternion::ZERO; len.max(n + 1)];
        coeffs[n] = Quaternion::ONE;
        CoeffVector { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Σ conj(c_n) d_n`, the inner product of the synthesised signals.
    pub fn inner(&self, other: &CoeffVector) -> Quaternion {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.conj() * *b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(Quaternion::norm_sqr).sum::<f64>().sqrt()
    }

    /// Largest entrywise distance, treating missing entries as zero.
    pub fn max_diff(&self, other: &CoeffVector) -> f64 {
        let n = self.len().max(other.len());
        (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).copied().unwrap_or(Quaternion::ZERO);
                let b = other.coeffs.get(k).copied().unwrap_or(Quaternion::ZERO);
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }

    /// `Σ φ_n(x) c_n` at an arbitrary point.
    pub fn eval(&self, alpha: f64, x: f64) -> Quaternion {
        phi_all(self.len(), alpha, x)
            .iter()
            .zip(&self.coeffs)
            .map(|(&p, &c)| c * p)
            .sum()
    }
}

/// `c_n = ⟨φ_n, f⟩_α` for `n = 0..=n_max`.
pub fn analyze(f: &RadialSignal, n_max: usize) -> Result<CoeffVector> {
    let rule = &f.rule;
    if n_max >= rule.count() {
        return Err(Error::domain(format!(
            "cutoff {n_max} must be below the rule size {}",
            rule.count()
        )));
    }
    let mut coeffs = vec![Quaternion::ZERO; n_max + 1];
    for ((&x, &lw), v) in rule.nodes().iter().zip(rule.log_weights()).zip(&f.values) {
        let nv = v.norm();
        if nv == 0.0 {
            continue;
        }
        let dir = *v / nv;
        let weighted = phi_all_scaled(n_max + 1, rule.alpha(), x, lw + nv.ln());
        for (c, p) in coeffs.iter_mut().zip(weighted) {
            *c += dir * p;
        }
    }
    Ok(CoeffVector { coeffs })
}

/// Samples of `Σ_n φ_n c_n` at the nodes of `rule`.
pub fn synthesize(c: &CoeffVector, rule: &Arc<GaussLaguerreRule>) -> RadialSignal {
    let values = rule
        .nodes()
        .iter()
        .map(|&x| {
            phi_all(c.len(), rule.alpha(), x)
                .iter()
                .zip(&c.coeffs)
                .filter(|(_, c)| c.norm_sqr() > 0.0)
                .map(|(&p, &c)| c * p)
                .sum()
        })
        .collect();
    RadialSignal { rule: rule.clone(), values }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rule(alpha: f64, m: usize) -> Arc<GaussLaguerreRule> {
        Arc::new(build_rule(alpha, m).unwrap())
    }

    #[test]
    fn one_point_rule_matches_first_two_moments() {
        for alpha in [0.5, 1.0, 2.5] {
            let r = build_rule(alpha, 1).unwrap();
            assert!((r.nodes()[0] - (alpha + 1.0)).abs() < 1e-14);
            let g = ln_gamma(alpha + 1.0).unwrap().exp();
            assert!((r.weights()[0] - g).abs() < 1e-13 * g);
        }
    }

    #[test]
    fn two_point_rule_is_exact_for_cubics() {
        let r = build_rule(1.0, 2).unwrap();
        let v = r.integrate(|x| x.powi(3));
        assert!((v - 24.0).abs() < 1e-12);
    }

    #[test]
    fn weights_sum_to_gamma() {
        for (alpha, m) in [(0.5, 10), (1.0, 128), (3.5, 300), (2.0, 512)] {
            let r = build_rule(alpha, m).unwrap();
            let g = ln_gamma(alpha + 1.0).unwrap().exp();
            let s: f64 = r.weights().iter().sum();
            assert!((s - g).abs() < 1e-12 * g, "alpha={alpha} m={m}: {s} vs {g}");
        }
    }

    #[test]
    fn monomials_integrate_exactly() {
        let alpha = 1.5;
        let m = 40;
        let r = build_rule(alpha, m).unwrap();
        for d in 0..2 * m {
            // log-scaled sum so high moments do not overflow
            let terms: Vec<f64> = r
                .nodes()
                .iter()
                .zip(r.log_weights())
                .map(|(&x, &lw)| lw + d as f64 * x.ln())
                .collect();
            let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let got = top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln();
            let expect = ln_gamma(alpha + d as f64 + 1.0).unwrap();
            assert!(((got - expect).exp() - 1.0).abs() < 1e-10, "degree {d}");
        }
    }

    #[test]
    fn rule_size_is_bounded() {
        assert!(build_rule(1.0, 0).is_err());
        assert!(build_rule(1.0, 513).is_err());
        assert!(build_rule(-1.0, 5).is_err());
    }

    #[test]
    fn phi_values() {
        let alpha: f64 = 1.7;
        let g = ln_gamma(alpha + 1.0).unwrap().exp();
        assert!((phi(0, alpha, 3.0) - g.powf(-0.5)).abs() < 1e-15);
        assert!((phi(2, 1.0, 0.0) - (2.0_f64 / 6.0).sqrt() * 3.0).abs() < 1e-14);
        let all = phi_all(30, alpha, 7.3);
        for (n, v) in all.iter().enumerate() {
            assert!((v - phi(n, alpha, 7.3)).abs() < 1e-12 * (1.0 + v.abs()));
        }
    }

    #[test]
    fn basis_is_orthonormal() {
        let r = rule(1.0, 64);
        let basis: Vec<RadialSignal> = (0..=20)
            .map(|n| RadialSignal::from_fn(r.clone(), |x| Quaternion::real(phi(n, 1.0, x))))
            .collect();
        for (m, a) in basis.iter().enumerate() {
            for (n, b) in basis.iter().enumerate() {
                let v = inner_product(a, b).unwrap();
                let d = if m == n { 1.0 } else { 0.0 };
                assert!((v - Quaternion::real(d)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn inner_product_is_conjugate_linear_on_the_left() {
        let r = rule(2.0, 32);
        let f = RadialSignal::from_fn(r.clone(), |x| Quaternion::new(1.0, x, 0.5, -x * 0.1) * (-x / 3.0).exp());
        let g = RadialSignal::from_fn(r.clone(), |x| Quaternion::new(x.sin(), 0.2, x, 1.0) * (-x / 4.0).exp());
        let lhs = inner_product(&f.scale_right(Quaternion::J), &g).unwrap();
        let rhs = -Quaternion::J * inner_product(&f, &g).unwrap();
        assert!((lhs - rhs).norm() < 1e-13);
        let ff = inner_product(&f, &f).unwrap();
        assert!(ff.w > 0.0 && ff.vector_norm() < 1e-14 * ff.w);
    }

    #[test]
    fn inner_product_rejects_foreign_rules() {
        let f = RadialSignal::zero(rule(1.0, 8));
        let g = RadialSignal::zero(rule(1.0, 9));
        assert!(matches!(inner_product(&f, &g), Err(Error::RuleMismatch)));
    }

    #[test]
    fn analyze_extracts_basis_coefficients() {
        let alpha = 0.5;
        let r = rule(alpha, 64);
        let f = RadialSignal::from_fn(r.clone(), |x| Quaternion::real(phi(3, alpha, x)));
        let c = analyze(&f, 10).unwrap();
        assert!(c.max_diff(&CoeffVector::basis(3, 11)) < 1e-12);

        let g = RadialSignal::from_fn(r.clone(), |x| {
            Quaternion::J * phi(0, alpha, x) + Quaternion::K * phi(1, alpha, x)
        });
        let c = analyze(&g, 5).unwrap();
        let expect = CoeffVector::new(vec![Quaternion::J, Quaternion::K, Quaternion::ZERO, Quaternion::ZERO, Quaternion::ZERO, Quaternion::ZERO]);
        assert!(c.max_diff(&expect) < 1e-12);

        let z = analyze(&RadialSignal::zero(r), 5).unwrap();
        assert_eq!(z.norm(), 0.0);
        assert!(analyze(&f, 64).is_err());
    }

    #[test]
    fn synthesize_then_analyze_round_trips_on_large_rules() {
        let r = rule(2.5, 400);
        let c = CoeffVector::new(
            (0..150)
                .map(|n| Quaternion::new(1.0, -0.5, n as f64 / 100.0, 0.25) / (1.0 + n as f64))
                .collect(),
        );
        let f = synthesize(&c, &r);
        let back = analyze(&f, 149).unwrap();
        assert!(back.max_diff(&c) < 1e-11, "{}", back.max_diff(&c));
        assert!((f.norm() - c.norm()).abs() < 1e-12);
    }
}
