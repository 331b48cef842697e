//! Slice second Bargmann transform and the weighted Bergman space of the
//! quaternionic unit ball.
//!
//! `𝒜` maps `L^{2,α}(ℝ⁺)` onto slice-regular series `F(q) = Σ qⁿ c_n` with
//! `𝒜 φ_n = f_n`, `f_n(q) = h_n qⁿ`, `h_n = (Γ(n+α+1)/(πΓ(α) n!))^{1/2}`. Its
//! kernel is
//!
//! ```text
//! A(x; q) = (1-q)^{-α-1} exp(xq/(q-1)) / √(πΓ(α)) = Σ_n φ_n(x) f_n(q).
//! ```
//!
//! Series are stored by coefficients. Integrals over a slice disc `𝔹_I` use a
//! product rule (Gauss–Jacobi in `r²`, uniform in angle) and evaluate series
//! ring by ring with an FFT, after splitting quaternion coefficients as
//! `a + b·J` with `a, b ∈ ℂ_I`.
//!
//! The inverse transform pairs `F` with the kernel truncated to the length of
//! `F`. By angular orthogonality the dropped kernel terms integrate to zero
//! against `F`, so this is the same integral; the untruncated kernel is not
//! resolved by a uniform angular rule near `z = 1`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{analyze, phi_all, GaussLaguerreRule, RadialSignal};
use crate::kernel::{series_length, KernelConfig, UNIT_SLACK};
use crate::quadrature::{gauss_rule, Recurrence};
use crate::quaternion::{ImaginaryUnit, Quaternion, SliceFrame};
use crate::specfun::{ln_gamma_pos, AlphaParam};

pub const DEFAULT_RADIAL_NODES: usize = 64;
pub const DEFAULT_ANGLES: usize = 256;

/// `h_n = (Γ(n+α+1)/(πΓ(α) n!))^{1/2}`, the scale of the basis monomial `f_n`.
pub fn basis_scale(n: usize, alpha: f64) -> f64 {
    let n = n as f64;
    (0.5 * (ln_gamma_pos(n + alpha + 1.0) - PI.ln() - ln_gamma_pos(alpha) - ln_gamma_pos(n + 1.0))).exp()
}

/// `F(q) = Σ qⁿ c_n`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SliceRegularSeries {
    pub coeffs: Vec<Quaternion>,
}

impl SliceRegularSeries {
    pub fn new(coeffs: Vec<Quaternion>) -> Self {
        SliceRegularSeries { coeffs }
    }

    /// The basis function `f_n`.
    pub fn basis(n: usize, alpha: f64) -> Self {
        let mut coeffs = vec![Quaternion::ZERO; n + 1];
        coeffs[n] = Quaternion::real(basis_scale(n, alpha));
        SliceRegularSeries { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Σ qⁿ c_n` by Horner's rule, `q` multiplying from the left.
    pub fn eval(&self, q: Quaternion) -> Quaternion {
        self.coeffs
            .iter()
            .rev()
            .fold(Quaternion::ZERO, |acc, &c| q * acc + c)
    }

    /// Bergman norm `(Σ |c_n|² / h_n²)^{1/2}`.
    pub fn norm(&self, alpha: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.norm_sqr() / basis_scale(n, alpha).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// `F(q) = Σ qⁿ c_n` restricted to `ℂ_I`, as `A(z) + B(z)·J`.
    fn split(&self, frame: &SliceFrame) -> (Vec<Complex64>, Vec<Complex64>) {
        self.coeffs.iter().map(|c| frame.split(c)).unzip()
    }
}

/// Cauchy product `(f ⋆ g)_n = Σ_k a_k b_{n-k}`, order of factors kept.
pub fn star_product(f: &SliceRegularSeries, g: &SliceRegularSeries) -> SliceRegularSeries {
    if f.is_empty() || g.is_empty() {
        return SliceRegularSeries::default();
    }
    let mut out = vec![Quaternion::ZERO; f.len() + g.len() - 1];
    for (i, &a) in f.coeffs.iter().enumerate() {
        for (j, &b) in g.coeffs.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    SliceRegularSeries { coeffs: out }
}

/// `Γ_θ F`: coefficient `c_n ↦ θⁿ c_n`.
pub fn gamma_action(f: &SliceRegularSeries, theta: Quaternion) -> Result<SliceRegularSeries> {
    if theta.norm() > 1.0 + UNIT_SLACK {
        return Err(Error::domain(format!(
            "rotation parameter must satisfy |theta| <= 1, got {}",
            theta.norm()
        )));
    }
    Ok(SliceRegularSeries {
        coeffs: f
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| theta.powi(n as u32) * c)
            .collect(),
    })
}

/// A point of the open unit ball.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallPoint(Quaternion);

impl BallPoint {
    pub fn new(q: Quaternion) -> Result<Self> {
        if q.norm() < 1.0 {
            Ok(BallPoint(q))
        } else {
            Err(Error::domain(format!("|q| must be below 1, got {}", q.norm())))
        }
    }

    pub fn get(self) -> Quaternion {
        self.0
    }
}

/// `A(x; q)` in closed form.
pub fn bargmann_kernel(x: f64, q: BallPoint, alpha: f64) -> Result<Quaternion> {
    let alpha = AlphaParam::new(alpha)?.get();
    let norm = -0.5 * (PI.ln() + ln_gamma_pos(alpha));
    Ok(q.0.slice_map(|z| {
        let one_minus = Complex64::new(1.0, 0.0) - z;
        (norm - (alpha + 1.0) * one_minus.ln() - x * z / one_minus).exp()
    }))
}

/// Product rule for `∫_{𝔹_I} g(z) (1-|z|²)^{α-1} dx dy`.
///
/// Radially, `s = r²` carries the Gauss–Jacobi rule for `(1-s)^{α-1}` on
/// `[0, 1]`; angles are uniform.
#[derive(Clone, Debug)]
pub struct DiscQuadratureRule {
    alpha: f64,
    radii: Vec<f64>,
    radial_weights: Vec<f64>,
    angles: usize,
}

impl DiscQuadratureRule {
    pub fn new(alpha: f64, radial: usize, angles: usize) -> Result<Self> {
        let alpha = AlphaParam::new(alpha)?.get();
        if radial == 0 || angles == 0 {
            return Err(Error::domain("disc rule needs at least one radius and one angle"));
        }
        let (a, b) = (alpha - 1.0, 0.0);
        let diag = |k: usize| {
            let s = 2.0 * k as f64 + a + b;
            let x = if k == 0 { (b - a) / (a + b + 2.0) } else { (b * b - a * a) / (s * (s + 2.0)) };
            (1.0 + x) / 2.0
        };
        let off = |k: usize| {
            if k == 0 {
                return 0.0;
            }
            let kf = k as f64;
            let s = 2.0 * kf + a + b;
            let beta = 4.0 * kf * (kf + a) * (kf + b) * (kf + a + b) / (s * s * (s + 1.0) * (s - 1.0));
            beta / 4.0
        };
        let rec = Recurrence {
            a: (0..radial).map(diag).collect(),
            b: (0..=radial).map(off).collect(),
            mu0: 1.0 / alpha,
        };
        let rule = gauss_rule(&rec, radial)?;
        Ok(DiscQuadratureRule {
            alpha,
            radii: rule.nodes.iter().map(|s| s.sqrt()).collect(),
            radial_weights: rule.log_weights.iter().map(|l| 0.5 * l.exp()).collect(),
            angles,
        })
    }

    pub fn with_defaults(alpha: f64) -> Result<Self> {
        Self::new(alpha, DEFAULT_RADIAL_NODES, DEFAULT_ANGLES)
    }

    /// Smallest disc rule that integrates products of series with `count`
    /// coefficients exactly.
    pub fn for_count(alpha: f64, count: usize) -> Result<Self> {
        let radial = count.div_ceil(2).max(DEFAULT_RADIAL_NODES);
        let angles = count.next_power_of_two().max(DEFAULT_ANGLES);
        Self::new(alpha, radial, angles)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn radial_weights(&self) -> &[f64] {
        &self.radial_weights
    }

    pub fn angles(&self) -> usize {
        self.angles
    }

    /// Largest `n` for which `r^{2n}` is integrated exactly.
    pub fn radial_exactness(&self) -> usize {
        2 * self.radii.len() - 1
    }

    /// Largest coefficient count for which `⟨F, G⟩_I` is exact.
    pub fn coefficient_limit(&self) -> usize {
        (2 * self.radii.len()).min(self.angles)
    }

    /// `Σ_k v_k Σ_m (2π/T) g(r_k e^{I t_m})` for a function of `(r, t)`.
    pub fn integrate(&self, g: impl Fn(f64, f64) -> f64) -> f64 {
        let dt = 2.0 * PI / self.angles as f64;
        self.radii
            .iter()
            .zip(&self.radial_weights)
            .map(|(&r, &v)| v * dt * (0..self.angles).map(|m| g(r, m as f64 * dt)).sum::<f64>())
            .sum()
    }

    fn check(&self, count: usize) -> Result<()> {
        if count > self.coefficient_limit() {
            Err(Error::Exactness { requested: count, limit: self.coefficient_limit() })
        } else {
            Ok(())
        }
    }
}

/// Values of complex power series on every ring of a disc rule.
struct RingEvaluator {
    fft: Arc<dyn rustfft::Fft<f64>>,
    angles: usize,
}

impl RingEvaluator {
    fn new(angles: usize) -> Self {
        let fft = FftPlanner::new().plan_fft_inverse(angles);
        RingEvaluator { fft, angles }
    }

    /// `Σ_n a_n (r e^{i t_m})ⁿ` for `m = 0..T`.
    fn ring(&self, coeffs: &[Complex64], r: f64) -> Vec<Complex64> {
        let mut buf = vec![Complex64::new(0.0, 0.0); self.angles];
        let mut rn = 1.0;
        for (n, &a) in coeffs.iter().enumerate() {
            buf[n % self.angles] += a * rn;
            rn *= r;
        }
        self.fft.process(&mut buf);
        buf
    }

    /// `F` on all disc nodes in `ℂ_I`, ring-major.
    fn series(&self, f: &SliceRegularSeries, disc: &DiscQuadratureRule, frame: &SliceFrame) -> Vec<Quaternion> {
        let (a, b) = f.split(frame);
        let mut out = Vec::with_capacity(disc.radii.len() * self.angles);
        for &r in &disc.radii {
            let va = self.ring(&a, r);
            let vb = self.ring(&b, r);
            out.extend(va.iter().zip(&vb).map(|(&x, &y)| frame.join(x, y)));
        }
        out
    }
}

/// `⟨F, G⟩_I = ∫_{𝔹_I} conj(F(z)) G(z) dλ(z)` by the disc rule.
pub fn bergman_inner(
    f: &SliceRegularSeries,
    g: &SliceRegularSeries,
    disc: &DiscQuadratureRule,
    unit: ImaginaryUnit,
) -> Result<Quaternion> {
    disc.check(f.len().max(g.len()))?;
    let frame = SliceFrame::new(unit);
    let eval = RingEvaluator::new(disc.angles);
    let fv = eval.series(f, disc, &frame);
    let gv = eval.series(g, disc, &frame);
    let dt = 2.0 * PI / disc.angles as f64;
    let mut acc = Quaternion::ZERO;
    for (k, &v) in disc.radial_weights.iter().enumerate() {
        let ring = k * disc.angles..(k + 1) * disc.angles;
        let s: Quaternion = fv[ring.clone()]
            .iter()
            .zip(&gv[ring])
            .map(|(a, &b)| a.conj() * b)
            .sum();
        acc += s * (v * dt);
    }
    Ok(acc)
}

/// `𝒜f` with coefficients `h_n ⟨φ_n, f⟩` for `n ≤ n_max`.
pub fn bargmann_forward(f: &RadialSignal, n_max: usize) -> Result<SliceRegularSeries> {
    let alpha = f.rule().alpha();
    let c = analyze(f, n_max)?;
    Ok(SliceRegularSeries {
        coeffs: c
            .coeffs
            .into_iter()
            .enumerate()
            .map(|(n, cn)| cn * basis_scale(n, alpha))
            .collect(),
    })
}

/// `𝒜⁻¹F` at the nodes of `rule`: `t ↦ ⟨A(t; ·), F⟩_I` on the disc.
pub fn bargmann_inverse(
    f: &SliceRegularSeries,
    rule: &Arc<GaussLaguerreRule>,
    disc: &DiscQuadratureRule,
    unit: ImaginaryUnit,
) -> Result<RadialSignal> {
    let alpha = rule.alpha();
    if disc.alpha != alpha {
        return Err(Error::ConfigMismatch(format!(
            "disc rule order {} differs from signal order {alpha}",
            disc.alpha
        )));
    }
    disc.check(f.len())?;
    let frame = SliceFrame::new(unit);
    let eval = RingEvaluator::new(disc.angles);
    let fv = eval.series(f, disc, &frame);
    let dt = 2.0 * PI / disc.angles as f64;
    let scales: Vec<f64> = (0..f.len()).map(|n| basis_scale(n, alpha)).collect();
    let values = rule
        .nodes()
        .iter()
        .map(|&t| {
            let kernel: Vec<Complex64> = phi_all(f.len(), alpha, t)
                .iter()
                .zip(&scales)
                .map(|(p, h)| Complex64::new(p * h, 0.0))
                .collect();
            let mut acc = Quaternion::ZERO;
            for (k, (&r, &v)) in disc.radii.iter().zip(&disc.radial_weights).enumerate() {
                let ring = eval.ring(&kernel, r);
                let s: Quaternion = ring
                    .iter()
                    .zip(&fv[k * disc.angles..(k + 1) * disc.angles])
                    .map(|(a, &b)| unit.embed(a.conj()) * b)
                    .sum();
                acc += s * (v * dt);
            }
            acc
        })
        .collect();
    RadialSignal::new(rule.clone(), values)
}

/// `𝒜⁻¹ Γ_θ 𝒜 f` with `n_max + 1` Laguerre modes.
pub fn frht_via_bargmann(
    f: &RadialSignal,
    theta: Quaternion,
    n_max: usize,
    disc: &DiscQuadratureRule,
    unit: ImaginaryUnit,
) -> Result<RadialSignal> {
    let forward = bargmann_forward(f, n_max)?;
    let rotated = gamma_action(&forward, theta)?;
    bargmann_inverse(&rotated, f.rule(), disc, unit)
}

/// Truncated kernel `Σ_{n<count} φ_n(x) f_n(q)` as a series in `q`.
pub fn bargmann_kernel_series(x: f64, alpha: f64, count: usize) -> SliceRegularSeries {
    SliceRegularSeries {
        coeffs: phi_all(count, alpha, x)
            .iter()
            .enumerate()
            .map(|(n, p)| Quaternion::real(p * basis_scale(n, alpha)))
            .collect(),
    }
}

/// `R_θ(x, y) = ⟨A(y; ·), Γ_θ A(x; ·)⟩_I` evaluated on the disc.
///
/// The kernels are truncated where the Laguerre series of `R_θ` settles; the
/// disc must be exact for that many coefficients.
pub fn kernel_via_bergman(
    theta: Quaternion,
    alpha: f64,
    x: f64,
    y: f64,
    disc: &DiscQuadratureRule,
    unit: ImaginaryUnit,
) -> Result<Quaternion> {
    if theta == Quaternion::ONE {
        return Err(Error::domain("the kernel at theta = 1 is a delta"));
    }
    if disc.alpha != alpha {
        return Err(Error::ConfigMismatch(format!(
            "disc rule order {} differs from kernel order {alpha}",
            disc.alpha
        )));
    }
    let cfg = KernelConfig::new(alpha)?;
    let count = series_length(theta.slice().0, x, y, &cfg)?;
    disc.check(count)?;
    let ax = gamma_action(&bargmann_kernel_series(x, alpha, count), theta)?;
    let ay = bargmann_kernel_series(y, alpha, count);
    bergman_inner(&ay, &ax, disc, unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{build_rule, phi};
    use crate::kernel::r_closed;
    use crate::specfun::ln_gamma;

    #[test]
    fn disc_rule_integrates_monomials() {
        for alpha in [0.5, 1.0, 2.5] {
            let disc = DiscQuadratureRule::with_defaults(alpha).unwrap();
            assert_eq!(disc.coefficient_limit(), 128);
            for n in [0, 1, 5, 40, 127] {
                let got = disc.integrate(|r, _| r.powi(2 * n));
                let expect = PI
                    * (ln_gamma(n as f64 + 1.0).unwrap() + ln_gamma(alpha).unwrap()
                        - ln_gamma(n as f64 + alpha + 1.0).unwrap())
                    .exp();
                assert!((got - expect).abs() < 1e-10 * expect, "alpha={alpha} n={n}");
            }
        }
    }

    #[test]
    fn kernel_at_origin_and_slice() {
        let alpha = 1.5;
        let v = bargmann_kernel(2.0, BallPoint::new(Quaternion::ZERO).unwrap(), alpha).unwrap();
        let expect = 1.0 / (PI * ln_gamma(alpha).unwrap().exp()).sqrt();
        assert!((v.w - expect).abs() < 1e-15);
        let q = BallPoint::new(Quaternion::new(0.1, 0.0, 0.5, 0.0)).unwrap();
        let v = bargmann_kernel(2.0, q, alpha).unwrap();
        assert!(v.x == 0.0 && v.z == 0.0);
        assert!(BallPoint::new(Quaternion::J).is_err());
    }

    #[test]
    fn kernel_is_the_bilinear_generating_function() {
        let alpha = 2.0;
        for q in [Quaternion::new(0.3, 0.2, -0.4, 0.1), Quaternion::new(-0.8, 0.0, 0.0, 0.0), Quaternion::K * 0.8] {
            for x in [0.5, 3.0] {
                let closed = bargmann_kernel(x, BallPoint::new(q).unwrap(), alpha).unwrap();
                let series = bargmann_kernel_series(x, alpha, 400).eval(q);
                assert!((closed - series).norm() < 1e-9 * closed.norm());
            }
        }
    }

    #[test]
    fn star_product_examples() {
        let one = SliceRegularSeries::new(vec![Quaternion::ONE]);
        let g = SliceRegularSeries::new(vec![Quaternion::I, Quaternion::new(1.0, 2.0, 3.0, 4.0)]);
        assert_eq!(star_product(&one, &g), g);
        let a = SliceRegularSeries::new(vec![Quaternion::ZERO, Quaternion::I]);
        let b = SliceRegularSeries::new(vec![Quaternion::ZERO, Quaternion::J]);
        assert_eq!(star_product(&a, &b).coeffs, vec![Quaternion::ZERO, Quaternion::ZERO, Quaternion::K]);
    }

    #[test]
    fn gamma_action_examples() {
        let f = SliceRegularSeries::basis(3, 1.0);
        let t = Quaternion::new(0.0, 0.6, 0.8, 0.0);
        let g = gamma_action(&f, t).unwrap();
        assert!((g.coeffs[3] - f.coeffs[3] * t.powi(3)).norm() < 1e-15);
        assert_eq!(gamma_action(&f, Quaternion::ONE).unwrap(), f);
        assert!(gamma_action(&f, Quaternion::real(1.1)).is_err());
    }

    #[test]
    fn forward_maps_basis_to_monomials() {
        let alpha = 1.5;
        let rule = Arc::new(build_rule(alpha, 64).unwrap());
        let f = RadialSignal::from_fn(rule.clone(), |x| Quaternion::real(phi(4, alpha, x)));
        let s = bargmann_forward(&f, 10).unwrap();
        let expect = SliceRegularSeries::basis(4, alpha);
        for n in 0..=10 {
            let e = expect.coeffs.get(n).copied().unwrap_or(Quaternion::ZERO);
            assert!((s.coeffs[n] - e).norm() < 1e-12);
        }
        let zero = bargmann_forward(&RadialSignal::zero(rule), 5).unwrap();
        assert!(zero.coeffs.iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn forward_matches_the_integral_transform_pointwise() {
        let alpha = 1.0;
        let rule = Arc::new(build_rule(alpha, 64).unwrap());
        let f = RadialSignal::from_fn(rule.clone(), |x| {
            Quaternion::real(phi(2, alpha, x)) + Quaternion::J * phi(5, alpha, x)
        });
        let q = Quaternion::new(0.3, 0.0, 0.2, 0.0);
        let direct: Quaternion = rule
            .nodes()
            .iter()
            .zip(rule.weights())
            .zip(f.values())
            .map(|((&x, &w), &v)| bargmann_kernel(x, BallPoint::new(q).unwrap(), alpha).unwrap() * v * w)
            .sum();
        let series = bargmann_forward(&f, 20).unwrap().eval(q);
        assert!((direct - series).norm() < 1e-8);
    }

    #[test]
    fn inverse_recovers_basis_functions() {
        let alpha = 2.0;
        let rule = Arc::new(build_rule(alpha, 64).unwrap());
        let disc = DiscQuadratureRule::with_defaults(alpha).unwrap();
        let f0 = bargmann_inverse(&SliceRegularSeries::basis(0, alpha), &rule, &disc, ImaginaryUnit::I).unwrap();
        let expect = RadialSignal::from_fn(rule.clone(), |x| Quaternion::real(phi(0, alpha, x)));
        assert!(f0.sub(&expect).unwrap().norm() < 1e-8);

        let phi2 = RadialSignal::from_fn(rule.clone(), |x| Quaternion::real(phi(2, alpha, x)) * Quaternion::K);
        let back = bargmann_inverse(&bargmann_forward(&phi2, 12).unwrap(), &rule, &disc, ImaginaryUnit::J).unwrap();
        assert!(back.sub(&phi2).unwrap().norm() < 1e-6);

        let zero = bargmann_inverse(&SliceRegularSeries::default(), &rule, &disc, ImaginaryUnit::I).unwrap();
        assert_eq!(zero.norm(), 0.0);
    }

    #[test]
    fn exactness_limit_is_enforced() {
        let disc = DiscQuadratureRule::new(1.0, 8, 32).unwrap();
        let f = SliceRegularSeries::new(vec![Quaternion::ONE; 17]);
        assert!(matches!(
            bergman_inner(&f, &f, &disc, ImaginaryUnit::I),
            Err(Error::Exactness { requested: 17, limit: 16 })
        ));
    }

    #[test]
    fn bergman_norm_matches_coefficient_norm() {
        let alpha = 0.5;
        let disc = DiscQuadratureRule::with_defaults(alpha).unwrap();
        let f = SliceRegularSeries::new((0..20).map(|n| Quaternion::new(1.0, -(n as f64), 0.5, 2.0)).collect());
        let v = bergman_inner(&f, &f, &disc, ImaginaryUnit::K).unwrap();
        assert!(v.vector_norm() < 1e-10 * v.w);
        assert!((v.w.sqrt() - f.norm(alpha)).abs() < 1e-10 * f.norm(alpha));
    }

    #[test]
    fn kernel_through_the_disc() {
        let alpha = 1.0;
        let disc = DiscQuadratureRule::with_defaults(alpha).unwrap();
        let t = Quaternion::J * 0.6;
        let v = kernel_via_bergman(t, alpha, 1.0, 2.0, &disc, ImaginaryUnit::J).unwrap();
        let closed = r_closed(t, alpha, 1.0, 2.0).unwrap();
        assert!((v - closed).norm() < 1e-7 * closed.norm());
        let w = kernel_via_bergman(t, alpha, 2.0, 1.0, &disc, ImaginaryUnit::J).unwrap();
        assert!((v - w).norm() < 1e-10);
        let z = kernel_via_bergman(Quaternion::ZERO, alpha, 1.0, 2.0, &disc, ImaginaryUnit::I).unwrap();
        assert!((z.w - 1.0).abs() < 1e-14);
    }

    #[test]
    fn three_paths_agree_on_a_small_signal() {
        let alpha = 1.0;
        let rule = Arc::new(build_rule(alpha, 64).unwrap());
        let disc = DiscQuadratureRule::with_defaults(alpha).unwrap();
        let f = RadialSignal::from_fn(rule.clone(), |x| {
            Quaternion::new(phi(0, alpha, x), 0.0, phi(3, alpha, x), 0.0)
        });
        let t = Quaternion::new(0.0, 0.0, 0.0, 0.9);
        let via = frht_via_bargmann(&f, t, 10, &disc, ImaginaryUnit::I).unwrap();
        let expect = RadialSignal::from_fn(rule.clone(), |x| {
            Quaternion::real(phi(0, alpha, x)) + t.powi(3) * Quaternion::J * phi(3, alpha, x)
        });
        assert!(via.sub(&expect).unwrap().norm() < 1e-6);
    }
}
