//! The fractional kernel
//!
//! ```text
//! R_θ(x, y) = Σ_n θⁿ φ_n(x) φ_n(y)
//!           = (1-θ)^{-α-1} exp(-θ(x+y)/(1-θ)) ĩ_α(θxy/(1-θ)²)
//! ```
//!
//! and its weighted form `K_θ(x, y) = x^α e^{-x} R_θ(x, y)`.
//!
//! Every factor is a function of `θ` alone (times reals), so the whole kernel
//! lives in the slice of `θ` and is computed there as a complex number. The
//! closed form contains no half-powers of `θ`, so real negative `θ` needs no
//! branch choice.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::specfun::{bessel_i_norm_exp_c, ln_gamma_pos, AlphaParam};

pub const MAX_TERMS: usize = 2000;
pub const DEFAULT_TAIL_TOL: f64 = 1e-15;
/// Consecutive small terms required before the series is declared converged.
const QUIET_TERMS: usize = 5;
/// Slack allowed on `|θ| ≤ 1`.
pub const UNIT_SLACK: f64 = 1e-12;

/// Truncation control for [`r_series`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelConfig {
    pub alpha: f64,
    pub n_max: usize,
    pub tail_tol: f64,
}

impl KernelConfig {
    pub fn new(alpha: f64) -> Result<Self> {
        Self::with_limits(alpha, MAX_TERMS, DEFAULT_TAIL_TOL)
    }

    pub fn with_limits(alpha: f64, n_max: usize, tail_tol: f64) -> Result<Self> {
        let alpha = AlphaParam::new(alpha)?.get();
        if n_max > MAX_TERMS {
            return Err(Error::domain(format!("n_max must be at most {MAX_TERMS}, got {n_max}")));
        }
        if !(tail_tol > 0.0) {
            return Err(Error::domain(format!("tail_tol must be positive, got {tail_tol}")));
        }
        Ok(KernelConfig { alpha, n_max, tail_tol })
    }
}

/// `R_θ(x, y)` as the truncated Laguerre series.
pub fn r_series(theta: Quaternion, x: f64, y: f64, cfg: &KernelConfig) -> Result<Quaternion> {
    if theta.norm() >= 1.0 {
        return Err(Error::domain(format!(
            "the Laguerre series needs |theta| < 1, got {}",
            theta.norm()
        )));
    }
    let (c, unit) = theta.slice();
    Ok(unit.embed(r_series_c(c, x, y, cfg)?))
}

pub(crate) fn r_series_c(theta: Complex64, x: f64, y: f64, cfg: &KernelConfig) -> Result<Complex64> {
    r_series_terms(theta, x, y, cfg).map(|(sum, _)| sum)
}

/// Number of Laguerre terms the series of `R_θ(x, y)` needs under `cfg`.
pub(crate) fn series_length(theta: Complex64, x: f64, y: f64, cfg: &KernelConfig) -> Result<usize> {
    r_series_terms(theta, x, y, cfg).map(|(_, n)| n)
}

fn r_series_terms(theta: Complex64, x: f64, y: f64, cfg: &KernelConfig) -> Result<(Complex64, usize)> {
    let alpha = cfg.alpha;
    let (mut px_prev, mut px) = (0.0, (-0.5 * ln_gamma_pos(alpha + 1.0)).exp());
    let (mut py_prev, mut py) = (0.0, px);
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut quiet = 0;
    for n in 0..=cfg.n_max {
        let term = power * (px * py);
        sum += term;
        if term.norm() < cfg.tail_tol * sum.norm() {
            quiet += 1;
            if quiet == QUIET_TERMS {
                return Ok((sum, n + 1));
            }
        } else {
            quiet = 0;
        }
        if power.norm() == 0.0 && n > 0 {
            return Ok((sum, n + 1));
        }
        let k = n as f64;
        let a = ((k + 1.0) * (k + alpha + 1.0)).sqrt();
        let b = (k * (k + alpha)).sqrt();
        let nx = ((2.0 * k + 1.0 + alpha - x) * px - b * px_prev) / a;
        let ny = ((2.0 * k + 1.0 + alpha - y) * py - b * py_prev) / a;
        (px_prev, px, py_prev, py) = (px, nx, py, ny);
        power *= theta;
    }
    Err(Error::Convergence(format!(
        "kernel series at theta={theta}, x={x}, y={y} did not settle within {} terms",
        cfg.n_max
    )))
}

/// `R_θ(x, y)` in closed form, valid for `|θ| ≤ 1`, `θ ≠ 1`.
pub fn r_closed(theta: Quaternion, alpha: f64, x: f64, y: f64) -> Result<Quaternion> {
    let (c, unit) = admissible(theta)?;
    Ok(unit.embed(r_closed_scaled(c, alpha, x, y, 0.0)?))
}

/// `x^α e^{-x} R_θ(x, y)`.
pub fn k_kernel(theta: Quaternion, x: f64, y: f64, cfg: &KernelConfig) -> Result<Quaternion> {
    let (c, unit) = admissible(theta)?;
    let weight = cfg.alpha * x.ln() - x;
    Ok(unit.embed(r_closed_scaled(c, cfg.alpha, x, y, weight)?))
}

/// Closed-form `R_θ` evaluated in an explicitly chosen slice.
pub fn r_closed_in(theta: Complex64, unit: ImaginaryUnit, alpha: f64, x: f64, y: f64) -> Result<Quaternion> {
    Ok(unit.embed(r_closed_scaled(theta, alpha, x, y, 0.0)?))
}

/// `e^{log_scale} R_θ(x, y)` for complex `θ`.
pub(crate) fn r_closed_scaled(theta: Complex64, alpha: f64, x: f64, y: f64, log_scale: f64) -> Result<Complex64> {
    let alpha = AlphaParam::new(alpha)?.get();
    if !(x > 0.0 && y > 0.0) {
        return Err(Error::domain(format!("kernel needs x, y > 0, got x={x}, y={y}")));
    }
    let one_minus = Complex64::new(1.0, 0.0) - theta;
    if one_minus.norm() == 0.0 {
        return Err(Error::domain("the kernel at theta = 1 is a delta; use the spectral path"));
    }
    let inv = 1.0 / one_minus;
    let shift = log_scale - (alpha + 1.0) * one_minus.ln() - theta * (x + y) * inv;
    bessel_i_norm_exp_c(alpha, theta * (x * y) * inv * inv, shift)
}

fn admissible(theta: Quaternion) -> Result<(Complex64, ImaginaryUnit)> {
    if theta.norm() > 1.0 + UNIT_SLACK {
        return Err(Error::domain(format!(
            "the kernel diverges for |theta| > 1, got {}",
            theta.norm()
        )));
    }
    Ok(theta.slice())
}
